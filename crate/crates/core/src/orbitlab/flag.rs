//! Subspaces of F_q^n in a canonical form adapted to the Borel of upper
//! triangular matrices: reduced row echelon form with pivots taken as the
//! LAST nonzero coordinate of each row.  The pivot positions are then
//! exactly the jump set of the subspace with respect to the standard flag
//! E_j = span(e_0, ..., e_{j-1}), i.e. they identify the Schubert cell.

use super::field::Fp;
use super::mat::Mat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub n: usize,
    /// Canonical basis, rows sorted by increasing pivot.
    pub rows: Vec<Vec<u32>>,
}

impl Subspace {
    /// Canonicalize an arbitrary spanning set.
    pub fn from_span(n: usize, vectors: &[Vec<u32>], f: Fp) -> Self {
        // pivot (last nonzero coordinate) -> reduced row
        let mut pivot_rows: Vec<(usize, Vec<u32>)> = Vec::new();
        for v in vectors {
            let mut v = v.clone();
            loop {
                let piv = match v.iter().rposition(|&x| x != 0) {
                    None => break,
                    Some(p) => p,
                };
                match pivot_rows.iter().find(|(p, _)| *p == piv) {
                    Some((_, row)) => {
                        let factor = v[piv]; // row[piv] == 1
                        for (x, &r) in v.iter_mut().zip(row.iter()) {
                            *x = f.sub(*x, f.mul(factor, r));
                        }
                    }
                    None => {
                        let inv = f.inv(v[piv]);
                        for x in v.iter_mut() {
                            *x = f.mul(*x, inv);
                        }
                        pivot_rows.push((piv, v));
                        break;
                    }
                }
            }
        }
        pivot_rows.sort_by_key(|(p, _)| *p);
        // clear pivot columns in the other rows
        for i in 0..pivot_rows.len() {
            for j in 0..pivot_rows.len() {
                if i == j {
                    continue;
                }
                let (pj, _) = pivot_rows[j];
                let factor = pivot_rows[i].1[pj];
                if factor != 0 {
                    let rj = pivot_rows[j].1.clone();
                    for (x, &r) in pivot_rows[i].1.iter_mut().zip(rj.iter()) {
                        *x = f.sub(*x, f.mul(factor, r));
                    }
                }
            }
        }
        Subspace {
            n,
            rows: pivot_rows.into_iter().map(|(_, r)| r).collect(),
        }
    }

    /// The coordinate subspace spanned by the given basis vectors.
    pub fn coordinate(n: usize, positions: &[usize]) -> Self {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        Subspace {
            n,
            rows: positions
                .iter()
                .map(|&p| {
                    let mut r = vec![0u32; n];
                    r[p] = 1;
                    r
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Pivot positions = jump set of the standard flag (identifies the cell).
    pub fn jump_set(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().rposition(|&x| x != 0).unwrap())
            .collect()
    }

    /// Image under an invertible matrix (acting on column vectors).
    pub fn apply(&self, g: &Mat, f: Fp) -> Subspace {
        let imgs: Vec<Vec<u32>> = self.rows.iter().map(|r| g.mul_vec(r, f)).collect();
        Subspace::from_span(self.n, &imgs, f)
    }
}

pub fn stack_rank(a: &Subspace, b: &Subspace, f: Fp) -> usize {
    let mut rows = a.rows.clone();
    rows.extend(b.rows.iter().cloned());
    Mat::from_rows(&rows).rank(f)
}

pub fn sum_dim(a: &Subspace, b: &Subspace, f: Fp) -> usize {
    stack_rank(a, b, f)
}

pub fn intersection_dim(a: &Subspace, b: &Subspace, f: Fp) -> usize {
    a.dim() + b.dim() - stack_rank(a, b, f)
}

pub fn sum(a: &Subspace, b: &Subspace, f: Fp) -> Subspace {
    let mut rows = a.rows.clone();
    rows.extend(b.rows.iter().cloned());
    Subspace::from_span(a.n, &rows, f)
}

/// Intersection by the Zassenhaus trick: row-reduce [A|A; B|0]; rows whose
/// left half vanished span the intersection in their right half.
pub fn intersection(a: &Subspace, b: &Subspace, f: Fp) -> Subspace {
    let n = a.n;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for r in &a.rows {
        let mut v = r.clone();
        v.extend(r.iter().copied());
        rows.push(v);
    }
    for r in &b.rows {
        let mut v = r.clone();
        v.extend(std::iter::repeat_n(0u32, n));
        rows.push(v);
    }
    // forward elimination on the left block (columns 0..n)
    let mut rank = 0usize;
    for col in 0..n {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) {
            rows.swap(rank, p);
            let inv = f.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    let pivot_row = rows[rank].clone();
                    for (x, &pv) in rows[r].iter_mut().zip(pivot_row.iter()) {
                        *x = f.sub(*x, f.mul(factor, pv));
                    }
                }
            }
            rank += 1;
        }
    }
    let inter: Vec<Vec<u32>> = rows[rank..]
        .iter()
        .map(|r| r[n..].to_vec())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    Subspace::from_span(n, &inter, f)
}

/// The standard symplectic form on F^{2m} (n = 2m even):
/// omega(e_i, e_j) = +1 if j = n-1-i and i < j, -1 if j = n-1-i and i > j.
pub fn omega(u: &[u32], v: &[u32], f: Fp) -> u32 {
    let n = u.len();
    let mut s = 0u32;
    for i in 0..n / 2 {
        let j = n - 1 - i;
        s = f.add(s, f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])));
    }
    s
}

/// Gram matrix of the symplectic form (for verifying that group elements
/// preserve it).
pub fn omega_matrix_over(n: usize, f: Fp) -> Mat {
    let mut j = Mat::zero(n, n);
    for i in 0..n / 2 {
        j.set(i, n - 1 - i, 1);
        j.set(n - 1 - i, i, f.neg(1));
    }
    j
}

/// Basis of the kernel of a matrix acting on column vectors.
fn nullspace(rows: &[Vec<u32>], n: usize, f: Fp) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        if let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) {
            m.swap(rank, p);
            let inv = f.inv(m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col];
                    let pv = m[rank].clone();
                    for (x, &v) in m[r].iter_mut().zip(pv.iter()) {
                        *x = f.sub(*x, f.mul(factor, v));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Orthogonal complement with respect to the symplectic form.
pub fn perp(v: &Subspace, f: Fp) -> Subspace {
    let n = v.n;
    // row u imposes the functional x -> omega(u, x)
    let constraints: Vec<Vec<u32>> = v
        .rows
        .iter()
        .map(|u| {
            (0..n)
                .map(|j| {
                    let c = u[n - 1 - j];
                    if j < n / 2 {
                        f.neg(c)
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    Subspace::from_span(n, &nullspace(&constraints, n, f), f)
}

pub fn is_isotropic(v: &Subspace, f: Fp) -> bool {
    for (i, a) in v.rows.iter().enumerate() {
        for b in v.rows.iter().skip(i + 1) {
            if omega(a, b, f) != 0 {
                return false;
            }
        }
    }
    true
}

/// Rank of the symplectic pairing between two subspaces.
pub fn omega_rank(a: &Subspace, b: &Subspace, f: Fp) -> usize {
    let mut w = Mat::zero(a.dim(), b.dim());
    for (i, x) in a.rows.iter().enumerate() {
        for (j, y) in b.rows.iter().enumerate() {
            w.set(i, j, omega(x, y, f));
        }
    }
    w.rank(f)
}

/// All k-dimensional subspaces of F_q^n (isotropic ones only, if requested),
/// generated directly in canonical form: for each pivot set, the free
/// entries are the positions below each pivot that are not pivots
/// themselves.
pub fn enumerate_subspaces(n: usize, k: usize, f: Fp, isotropic: bool) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    if k == 0 {
        return vec![Subspace { n, rows: vec![] }];
    }
    if k > n {
        return out;
    }
    loop {
        // free positions per row
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (0..p).filter(|j| !pivots.contains(j)).collect())
            .collect();
        let total: usize = free.iter().map(|v| v.len()).sum();
        let mut counter = vec![0u32; total];
        loop {
            let mut rows: Vec<Vec<u32>> = Vec::with_capacity(k);
            let mut ci = 0usize;
            for (ri, &p) in pivots.iter().enumerate() {
                let mut row = vec![0u32; n];
                row[p] = 1;
                for &j in &free[ri] {
                    row[j] = counter[ci];
                    ci += 1;
                }
                rows.push(row);
            }
            let cand = Subspace { n, rows };
            if !isotropic || is_isotropic(&cand, f) {
                out.push(cand);
            }
            // increment mixed-radix counter
            let mut pos = 0usize;
            loop {
                if pos == total {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < f.p {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == total {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u32) -> Fp {
        Fp::new(q).unwrap()
    }

    #[test]
    fn canonical_form_is_stable_under_respanning() {
        let f = fp(5);
        let v = Subspace::from_span(
            4,
            &[vec![1, 2, 3, 0], vec![0, 1, 1, 2]],
            f,
        );
        assert_eq!(v.dim(), 2);
        // random-ish recombinations of the basis give the same canonical form
        let a = v.rows[0].clone();
        let b = v.rows[1].clone();
        let lin = |c1: u32, c2: u32| -> Vec<u32> {
            (0..4).map(|i| f.add(f.mul(c1, a[i]), f.mul(c2, b[i]))).collect()
        };
        let w = Subspace::from_span(4, &[lin(2, 3), lin(1, 1)], f);
        assert_eq!(v, w);
    }

    #[test]
    fn jump_sets_and_pivots() {
        let f = fp(3);
        // e_1 + e_3 has bottom pivot 3
        let v = Subspace::from_span(4, &[vec![1, 0, 0, 1], vec![0, 1, 0, 0]], f);
        assert_eq!(v.jump_set(), vec![1, 3]);
        let e = Subspace::coordinate(4, &[0, 2]);
        assert_eq!(e.jump_set(), vec![0, 2]);
    }

    #[test]
    fn grassmannian_counts() {
        // |Gr(k, n)(F_q)| = Gaussian binomial
        let cases = [
            (2u32, 4usize, 2usize, 35usize),
            (3, 4, 2, 130),
            (2, 4, 1, 15),
            (3, 3, 1, 13),
            (5, 4, 2, 806),
        ];
        for (q, n, k, count) in cases {
            assert_eq!(
                enumerate_subspaces(n, k, fp(q), false).len(),
                count,
                "q={q} n={n} k={k}"
            );
        }
    }

    #[test]
    fn lagrangian_counts() {
        // isotropic k-subspaces of F^6: k=3 gives (1+q)(1+q^2)(1+q^3)
        let cases = [(2u32, 135usize), (3, 1120), (5, 19656)];
        for (q, count) in cases {
            assert_eq!(enumerate_subspaces(6, 3, fp(q), true).len(), count, "q={q}");
        }
    }

    #[test]
    fn intersection_and_sum() {
        let f = fp(5);
        let a = Subspace::from_span(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], f);
        let b = Subspace::from_span(4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]], f);
        assert_eq!(intersection_dim(&a, &b, f), 1);
        assert_eq!(sum_dim(&a, &b, f), 3);
        let i = intersection(&a, &b, f);
        assert_eq!(i, Subspace::coordinate(4, &[1]));
        assert_eq!(sum(&a, &b, f), Subspace::coordinate(4, &[0, 1, 2]));
        // a trickier intersection
        let c = Subspace::from_span(4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], f);
        let d = Subspace::from_span(4, &[vec![1, 1, 1, 1]], f);
        assert_eq!(intersection(&c, &d, f), d);
    }

    #[test]
    fn omega_is_alternating_and_nondegenerate() {
        let f = fp(7);
        let n = 6;
        for i in 0..n {
            let mut ei = vec![0u32; n];
            ei[i] = 1;
            assert_eq!(omega(&ei, &ei, f), 0);
            for j in 0..n {
                let mut ej = vec![0u32; n];
                ej[j] = 1;
                let x = omega(&ei, &ej, f);
                let y = omega(&ej, &ei, f);
                assert_eq!(f.add(x, y), 0);
                if i + j == n - 1 {
                    assert_ne!(x, 0);
                } else {
                    assert_eq!(x, 0);
                }
            }
        }
    }

    #[test]
    fn perp_complements_correctly() {
        let f = fp(5);
        for v in enumerate_subspaces(4, 2, f, false) {
            let p = perp(&v, f);
            assert_eq!(p.dim(), 2);
            for a in &v.rows {
                for b in &p.rows {
                    assert_eq!(omega(a, b, f), 0);
                }
            }
            assert_eq!(is_isotropic(&v, f), intersection(&v, &p, f) == v);
        }
    }

    #[test]
    fn apply_by_invertible_matrix_preserves_dim() {
        let f = fp(3);
        let g = Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 2], vec![0, 0, 1]]);
        let v = Subspace::from_span(3, &[vec![1, 0, 1]], f);
        let w = v.apply(&g, f);
        assert_eq!(w.dim(), 1);
        let ginv = g.inverse(f).unwrap();
        assert_eq!(w.apply(&ginv, f), v);
    }
}
