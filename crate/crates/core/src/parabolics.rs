//! Maximal parabolic subgroups (marked Dynkin nodes), double cosets, and the
//! induction datum attached to a B-orbit on a product of two flag varieties.
//!
//! A maximal parabolic P is recorded by its marked node; the associated
//! dominant cocharacter chi_P pairs with a root as the coefficient of the
//! marked simple root.  For a pair (P1, P2) and a double coset
//! W_{P1} w W_{P2}, the cocharacter chi_R = chi_{P1} + w(chi_{P2}) taken at
//! the minimal representative is dominant; its zero set cuts out a Levi L_R
//! carrying a smaller pair of parabolics (Q1, Q2), which is the inductive
//! description of the G-orbit lying over the coset.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::roots::{Root, RootSystem, Weight};
use crate::weyl::{self, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicDatum {
    /// Marked node, 0-based in Bourbaki numbering.
    pub node: usize,
}

impl ParabolicDatum {
    pub fn new(sys: &RootSystem, node: usize) -> Result<Self, Error> {
        if node >= sys.rank() {
            return Err(Error::NodeOutOfRange {
                node,
                rank: sys.rank(),
            });
        }
        Ok(ParabolicDatum { node })
    }

    /// Simple nodes generating the Levi subgroup W_P.
    pub fn levi(&self, sys: &RootSystem) -> Vec<usize> {
        (0..sys.rank()).filter(|&i| i != self.node).collect()
    }

    /// `<chi_P, alpha>` for a vector in root coordinates.
    pub fn chi_pairing(&self, r: &[i64]) -> i64 {
        r[self.node]
    }

    pub fn fundamental_weight(&self, sys: &RootSystem) -> Weight {
        sys.fundamental_weight(self.node)
    }

    /// P is cominuscule iff the marked coefficient of every root is 0 or +-1.
    pub fn is_cominuscule(&self, sys: &RootSystem) -> bool {
        sys.positive_roots.iter().all(|r| r[self.node] <= 1)
    }

    /// dim G/P = number of roots in the unipotent radical.
    pub fn flag_dimension(&self, sys: &RootSystem) -> usize {
        sys.positive_roots
            .iter()
            .filter(|r| r[self.node] > 0)
            .count()
    }
}

pub fn is_opposite_pair(sys: &RootSystem, p1: &ParabolicDatum, p2: &ParabolicDatum) -> bool {
    weyl::is_opposite_nodes(sys, p1.node, p2.node)
}

/// The minimal-length representative of W_{P1} w W_{P2}: greedily strip left
/// descents in the first Levi and right descents in the second.
pub fn canonical_double_coset(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
    w: &WeylElement,
) -> WeylElement {
    let levi1 = p1.levi(sys);
    let levi2 = p2.levi(sys);
    let mut w = w.clone();
    loop {
        let winv = w.inverse(sys);
        if let Some(&i) = levi1.iter().find(|&&i| winv.has_right_descent(i)) {
            // w^{-1}(alpha_i) < 0: i is a left descent
            w = WeylElement::simple(sys, i).mul(sys, &w);
        } else if let Some(&j) = levi2.iter().find(|&&j| w.has_right_descent(j)) {
            w = w.mul(sys, &WeylElement::simple(sys, j));
        } else {
            return w;
        }
    }
}

/// Minimal representatives of all W_{P1}\W/W_{P2} double cosets, sorted by
/// (length, canonical word).
pub fn double_cosets(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
) -> Vec<WeylElement> {
    let levi1 = p1.levi(sys);
    let levi2 = p2.levi(sys);
    weyl::enumerate(sys)
        .iter()
        .filter(|w| {
            let winv = w.inverse(sys);
            levi1.iter().all(|&i| !winv.has_right_descent(i))
                && levi2.iter().all(|&j| !w.has_right_descent(j))
        })
        .cloned()
        .collect()
}

/// The data describing how the G-orbit over a double coset is induced from a
/// smaller pair of flag varieties inside the Levi L_R.
#[derive(Clone, Debug)]
pub struct InductionDatum {
    pub p1: ParabolicDatum,
    pub p2: ParabolicDatum,
    /// Minimal representative of the double coset.
    pub w: WeylElement,
    /// `<chi_R, alpha_j>` at each simple root; dominant by construction.
    pub chi_r: Vec<i64>,
    /// Nodes of the Levi L_R (zero set of chi_R).
    pub r_nodes: Vec<usize>,
    /// Marked node of Q1 = P1 ∩ L_R, if P1 is not already transverse.
    pub q1_node: Option<usize>,
    /// Marked node of Q2, the opposite of Q1 inside L_R.
    pub q2_node: Option<usize>,
    /// Longest element of W_{L_R}.
    pub w0_levi: WeylElement,
    /// Rank of the G-orbit; filled in by `metric::g_orbit_rank`.
    pub orbit_rank: Option<usize>,
}

impl InductionDatum {
    /// `<chi_R, alpha>` for a vector in root coordinates.
    pub fn chi_r_pairing(&self, r: &[i64]) -> i64 {
        r.iter().zip(self.chi_r.iter()).map(|(&c, &x)| c * x).sum()
    }

    /// Positive roots of the Levi L_R.
    pub fn levi_positive_roots(&self, sys: &RootSystem) -> Vec<Root> {
        sys.positive_roots
            .iter()
            .filter(|r| self.chi_r_pairing(r) == 0)
            .cloned()
            .collect()
    }
}

/// Build the induction datum for the double coset of `w` (which is first
/// normalized to its minimal representative).
///
/// Certifies along the way that chi_R is dominant, that roots nonnegative on
/// both chi_{P1} and w(chi_{P2}) are nonnegative on chi_R, and that the
/// unipotent radical of P(chi_R) sits inside the parabolic defined by
/// w(chi_{P2}); the last check can fail when P1 is not cominuscule, in which
/// case the offending root is reported.
pub fn induction_datum(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
    w: &WeylElement,
) -> Result<InductionDatum, Error> {
    let w = canonical_double_coset(sys, p1, p2, w);
    let winv = w.inverse(sys);
    let n = sys.rank();
    // <w(chi_{P2}), alpha> = <chi_{P2}, w^{-1}(alpha)>
    let wchi2 = |r: &[i64]| -> i64 { winv.act_root(r)[p2.node] };
    let chi_r: Vec<i64> = (0..n)
        .map(|j| {
            let a = sys.simple_root(j);
            (if j == p1.node { 1 } else { 0 }) + wchi2(&a)
        })
        .collect();
    if chi_r.iter().any(|&x| x < 0) {
        return Err(Error::ChiRNotDominant(chi_r));
    }
    let chi_r_pair = |r: &[i64]| -> i64 { r.iter().zip(chi_r.iter()).map(|(&c, &x)| c * x).sum() };
    for alpha in sys.all_roots() {
        let c1 = alpha[p1.node];
        let c2 = wchi2(&alpha);
        let cr = chi_r_pair(&alpha);
        debug_assert_eq!(cr, c1 + c2);
        if c1 >= 0 && c2 >= 0 && cr < 0 {
            return Err(Error::Invariant(format!(
                "chi_R negative on {alpha:?} though both summands are nonnegative"
            )));
        }
        if cr > 0 && c2 < 0 {
            return Err(Error::PropTrivViolation { root: alpha });
        }
    }
    let r_nodes: Vec<usize> = (0..n).filter(|&j| chi_r[j] == 0).collect();
    let w0_levi = weyl::longest_levi_element(sys, &r_nodes);
    let (q1_node, q2_node) = if r_nodes.contains(&p1.node) {
        // -w0_levi is a diagram involution of L_R; Q2 is the image of Q1
        let q2 = r_nodes
            .iter()
            .copied()
            .find(|&j| {
                let img = w0_levi.act_root(&sys.simple_root(j));
                let mut neg = vec![0i64; n];
                neg[p1.node] = -1;
                img == neg
            })
            .ok_or_else(|| Error::Invariant("no opposite node inside L_R".into()))?;
        // certify (Q1, Q2) are opposite inside L_R
        for &j in &r_nodes {
            let img = w0_levi.act_root(&sys.simple_root(j));
            let expect = if j == q2 { -1 } else { 0 };
            if img[p1.node] != expect {
                return Err(Error::Invariant(format!(
                    "(Q1, Q2) not opposite in L_R at node {j}"
                )));
            }
        }
        (Some(p1.node), Some(q2))
    } else {
        (None, None)
    };
    Ok(InductionDatum {
        p1: *p1,
        p2: *p2,
        w,
        chi_r,
        r_nodes,
        q1_node,
        q2_node,
        w0_levi,
        orbit_rank: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn cominuscule_classification() {
        // (type, 0-based cominuscule nodes)
        let cases: Vec<(&str, Vec<usize>)> = vec![
            ("A4", vec![0, 1, 2, 3]),
            ("B3", vec![0]),
            ("C3", vec![2]),
            ("D5", vec![0, 3, 4]),
            ("E6", vec![0, 5]),
            ("E7", vec![6]),
            ("E8", vec![]),
            ("F4", vec![]),
            ("G2", vec![]),
        ];
        for (name, nodes) in cases {
            let s = sys(name);
            let got: Vec<usize> = (0..s.rank())
                .filter(|&i| ParabolicDatum::new(&s, i).unwrap().is_cominuscule(&s))
                .collect();
            assert_eq!(got, nodes, "{name}");
        }
    }

    #[test]
    fn flag_dimensions() {
        let s = sys("A3");
        // P^3, Gr(2,4), (P^3)*
        let dims: Vec<usize> = (0..3)
            .map(|i| ParabolicDatum::new(&s, i).unwrap().flag_dimension(&s))
            .collect();
        assert_eq!(dims, vec![3, 4, 3]);
        let c3 = sys("C3");
        assert_eq!(
            ParabolicDatum::new(&c3, 2).unwrap().flag_dimension(&c3),
            6 // Lagrangian Grassmannian LG(3,6)
        );
    }

    #[test]
    fn double_coset_counts_match_orbit_counts() {
        // Orbits of GL_n on pairs of subspaces are classified by
        // (dim V1, dim V2, dim V1 ∩ V2), so the counts are known.
        let cases = [
            ("A1", 0, 0, 2), // (P^1)^2: equal or distinct
            ("A2", 0, 0, 2),
            ("A3", 1, 1, 3), // Gr(2,4)^2: intersection dim 0, 1, 2
            ("A3", 1, 0, 2), // Gr(2,4) x P^3: line in or off the plane... point in or off
            ("A3", 0, 2, 2),
        ];
        for (name, n1, n2, count) in cases {
            let s = sys(name);
            let p1 = ParabolicDatum::new(&s, n1).unwrap();
            let p2 = ParabolicDatum::new(&s, n2).unwrap();
            let cosets = double_cosets(&s, &p1, &p2);
            assert_eq!(cosets.len(), count, "{name} ({n1},{n2})");
        }
    }

    #[test]
    fn canonical_double_coset_is_idempotent_and_minimal() {
        let s = sys("A3");
        let p1 = ParabolicDatum::new(&s, 1).unwrap();
        let p2 = ParabolicDatum::new(&s, 1).unwrap();
        let reps = double_cosets(&s, &p1, &p2);
        for w in weyl::enumerate(&s).iter() {
            let c = canonical_double_coset(&s, &p1, &p2, w);
            assert!(reps.contains(&c));
            assert!(c.length() <= w.length());
            assert_eq!(canonical_double_coset(&s, &p1, &p2, &c), c);
        }
    }

    #[test]
    fn induction_datum_middle_coset_of_gr24_squared() {
        let s = sys("A3");
        let p = ParabolicDatum::new(&s, 1).unwrap();
        let w = WeylElement::simple(&s, 1);
        let d = induction_datum(&s, &p, &p, &w).unwrap();
        assert_eq!(d.w, w);
        assert_eq!(d.chi_r, vec![1, 0, 1]);
        assert_eq!(d.r_nodes, vec![1]); // L_R has type A1
        assert_eq!(d.q1_node, Some(1));
        assert_eq!(d.q2_node, Some(1));
    }

    #[test]
    fn induction_datum_dense_coset_has_zero_chi_r() {
        // for an opposite pair the dense coset gives L_R = G
        for (name, n1, n2) in [("A3", 1usize, 1usize), ("A3", 0, 2), ("C3", 2, 2), ("D4", 0, 0)] {
            let s = sys(name);
            let p1 = ParabolicDatum::new(&s, n1).unwrap();
            let p2 = ParabolicDatum::new(&s, n2).unwrap();
            assert!(is_opposite_pair(&s, &p1, &p2));
            let w0 = weyl::longest_element(&s);
            let d = induction_datum(&s, &p1, &p2, &w0).unwrap();
            assert!(d.chi_r.iter().all(|&x| x == 0), "{name}");
            assert_eq!(d.r_nodes.len(), s.rank());
            assert_eq!(d.q1_node, Some(n1));
            assert_eq!(d.q2_node, Some(n2), "{name}: q2 should be the opposite node");
        }
    }

    #[test]
    fn induction_datum_identity_coset_is_transverse_or_not() {
        let s = sys("A3");
        let p = ParabolicDatum::new(&s, 1).unwrap();
        let e = WeylElement::identity(&s);
        let d = induction_datum(&s, &p, &p, &e).unwrap();
        // chi_R = 2 chi_P: node 1 not in the Levi, no induced pair
        assert_eq!(d.chi_r, vec![0, 2, 0]);
        assert_eq!(d.q1_node, None);
        assert_eq!(d.q2_node, None);
    }

    #[test]
    fn induction_datum_normalizes_its_input() {
        let s = sys("A3");
        let p = ParabolicDatum::new(&s, 1).unwrap();
        // s_0 s_1 lies in the coset of s_1
        let w = WeylElement::from_word(&s, &[0, 1]);
        let d = induction_datum(&s, &p, &p, &w).unwrap();
        assert_eq!(d.w, WeylElement::simple(&s, 1));
    }

    #[test]
    fn all_cosets_of_cominuscule_pairs_produce_data() {
        for (name, n1, n2) in [
            ("A3", 1usize, 1usize),
            ("A3", 0, 2),
            ("A4", 1, 3),
            ("C3", 2, 2),
            ("D4", 0, 0),
            ("D4", 2, 2),
        ] {
            let s = sys(name);
            let p1 = ParabolicDatum::new(&s, n1).unwrap();
            let p2 = ParabolicDatum::new(&s, n2).unwrap();
            for w in double_cosets(&s, &p1, &p2) {
                let d = induction_datum(&s, &p1, &p2, &w).unwrap();
                assert_eq!(d.q1_node.is_some(), d.q2_node.is_some(), "{name}");
            }
        }
    }
}
