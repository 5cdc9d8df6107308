//! Bridge between abstract root data and concrete matrix groups:
//! GL_n for type A_{n-1} and Sp_2m for type C_m, with B the upper
//! triangular subgroup and the symplectic form omega(e_i, e_j) nonzero
//! exactly for i + j = n - 1 (0-based).

use num_rational::Rational64;

use super::field::Fp;
use super::mat::Mat;
use crate::error::Error;
use crate::roots::{Family, Root, RootSystem, Weight};

/// Dimension of the natural module.
pub fn dim_v(sys: &RootSystem) -> Result<usize, Error> {
    match sys.ctype.family {
        Family::A => Ok(sys.rank() + 1),
        Family::C => Ok(2 * sys.rank()),
        _ => Err(Error::UnsupportedGroup(sys.ctype.to_string())),
    }
}

pub fn is_symplectic(sys: &RootSystem) -> bool {
    sys.ctype.family == Family::C
}

/// Marked node -> dimension of the subspaces parametrized by G/P.
pub fn node_subspace_dim(node: usize) -> usize {
    node + 1
}

/// A root in epsilon coordinates (length = rank for C, rank+1 for A).
pub fn eps_of_root(sys: &RootSystem, r: &Root) -> Vec<i64> {
    let rank = sys.rank();
    match sys.ctype.family {
        Family::A => {
            let mut eps = vec![0i64; rank + 1];
            for (i, &c) in r.iter().enumerate() {
                eps[i] += c;
                eps[i + 1] -= c;
            }
            eps
        }
        Family::C => {
            let mut eps = vec![0i64; rank];
            for (i, &c) in r.iter().enumerate() {
                if i + 1 < rank {
                    eps[i] += c;
                    eps[i + 1] -= c;
                } else {
                    eps[i] += 2 * c;
                }
            }
            eps
        }
        _ => unreachable!("unsupported family"),
    }
}

/// The one-parameter root subgroup element x_alpha(t).
pub fn root_matrix(sys: &RootSystem, f: Fp, r: &Root, t: u32) -> Result<Mat, Error> {
    let n = dim_v(sys)?;
    let eps = eps_of_root(sys, r);
    let mut m = Mat::identity(n);
    match sys.ctype.family {
        Family::A => {
            let i = eps.iter().position(|&x| x == 1).unwrap();
            let j = eps.iter().position(|&x| x == -1).unwrap();
            m.set(i, j, t);
        }
        Family::C => {
            let pi = |i: usize| n - 1 - i;
            let pos: Vec<usize> = eps
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i)
                .collect();
            match pos.as_slice() {
                [i] => {
                    // +-2 eps_i
                    if eps[*i] == 2 {
                        m.set(*i, pi(*i), t);
                    } else {
                        m.set(pi(*i), *i, t);
                    }
                }
                [i, j] => match (eps[*i], eps[*j]) {
                    (1, -1) => {
                        m.set(*i, *j, t);
                        m.set(pi(*j), pi(*i), f.neg(t));
                    }
                    (-1, 1) => {
                        m.set(*j, *i, t);
                        m.set(pi(*i), pi(*j), f.neg(t));
                    }
                    (1, 1) => {
                        m.set(*i, pi(*j), t);
                        m.set(*j, pi(*i), t);
                    }
                    (-1, -1) => {
                        m.set(pi(*j), *i, t);
                        m.set(pi(*i), *j, t);
                    }
                    _ => unreachable!("bad C root"),
                },
                _ => unreachable!("bad C root"),
            }
        }
        _ => unreachable!("unsupported family"),
    }
    Ok(m)
}

/// Generators of the torus T(F_q).
pub fn torus_gens(sys: &RootSystem, f: Fp) -> Result<Vec<Mat>, Error> {
    let n = dim_v(sys)?;
    let lam = f.primitive_root();
    if lam == 1 {
        return Ok(Vec::new()); // F_2: trivial torus
    }
    let mut out = Vec::new();
    match sys.ctype.family {
        Family::A => {
            for i in 0..n {
                let mut m = Mat::identity(n);
                m.set(i, i, lam);
                out.push(m);
            }
        }
        Family::C => {
            for i in 0..n / 2 {
                let mut m = Mat::identity(n);
                m.set(i, i, lam);
                m.set(n - 1 - i, n - 1 - i, f.inv(lam));
                out.push(m);
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// All x_alpha(t) for positive alpha and t != 0, plus torus generators:
/// generates B(F_q).
pub fn borel_gens(sys: &RootSystem, f: Fp) -> Result<Vec<Mat>, Error> {
    let mut out = torus_gens(sys, f)?;
    for r in &sys.positive_roots {
        for t in 1..f.p {
            out.push(root_matrix(sys, f, r, t)?);
        }
    }
    Ok(out)
}

/// The standard lift of the reflection s_gamma:
/// x_gamma(1) x_{-gamma}(-1) x_gamma(1).
pub fn reflection_lift(sys: &RootSystem, f: Fp, gamma: &Root) -> Result<Mat, Error> {
    let neg: Root = gamma.iter().map(|&c| -c).collect();
    let a = root_matrix(sys, f, gamma, 1)?;
    let b = root_matrix(sys, f, &neg, f.neg(1))?;
    Ok(a.mul(&b, f).mul(&a, f))
}

/// A lift of a Weyl group element (product of reflection lifts along its
/// canonical word).
pub fn weyl_matrix(
    sys: &RootSystem,
    f: Fp,
    w: &crate::weyl::WeylElement,
) -> Result<Mat, Error> {
    let n = dim_v(sys)?;
    let mut m = Mat::identity(n);
    for &i in w.word() {
        let lift = reflection_lift(sys, f, &sys.simple_root(i as usize))?;
        m = m.mul(&lift, f);
    }
    Ok(m)
}

/// Weight of the basis line F e_i, in fundamental coordinates.
pub fn basis_weight(sys: &RootSystem, i: usize) -> Weight {
    let rank = sys.rank();
    let int = Rational64::from_integer;
    match sys.ctype.family {
        Family::A => (0..rank)
            .map(|j| int((j == i) as i64) - int((j + 1 == i) as i64))
            .collect(),
        Family::C => {
            let n = 2 * rank;
            // e_i has weight eps_i for i < rank, -eps_{n-1-i} otherwise
            let (sign, k) = if i < rank { (1, i) } else { (-1, n - 1 - i) };
            let mut eps = vec![0i64; rank];
            eps[k] = sign;
            (0..rank)
                .map(|j| {
                    if j + 1 < rank {
                        int(eps[j] - eps[j + 1])
                    } else {
                        int(eps[j])
                    }
                })
                .collect()
        }
        _ => unreachable!(),
    }
}

/// Weight of the cell with the given jump set: the sum of the basis weights.
pub fn jumpset_weight(sys: &RootSystem, jumps: &[usize]) -> Weight {
    let rank = sys.rank();
    let mut out = vec![Rational64::from_integer(0); rank];
    for &p in jumps {
        for (o, x) in out.iter_mut().zip(basis_weight(sys, p)) {
            *o += x;
        }
    }
    out
}
