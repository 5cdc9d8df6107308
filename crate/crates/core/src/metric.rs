//! The distance between weights of two minuscule orbits, the greedy
//! reflection algorithm computing it, root cascades, and orbit ranks.
//!
//! For minuscule fundamental weights varpi_1, varpi_2 (simply-laced types)
//! and weights lambda_i in their Weyl orbits,
//!
//!   d(lambda_1, lambda_2) = (varpi_1, varpi_2) - (lambda_1, lambda_2)
//!
//! is a nonnegative integer.  It is computed by repeatedly reflecting
//! lambda_2 in a positive root gamma on which the two weights pair with
//! opposite signs; each such step decreases d by exactly one, and the roots
//! used are mutually orthogonal.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::Error;
use crate::parabolics::{self, InductionDatum, ParabolicDatum};
use crate::roots::{
    component_highest_root, format_weight, subsystem_components, Rat, Root, RootSystem, Weight,
};
use crate::weyl;

/// A pair of weights in the orbits of two minuscule fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPair {
    pub p1: ParabolicDatum,
    pub p2: ParabolicDatum,
    pub lam1: Weight,
    pub lam2: Weight,
}

impl WeightPair {
    pub fn new(
        sys: &RootSystem,
        p1: ParabolicDatum,
        p2: ParabolicDatum,
        lam1: Weight,
        lam2: Weight,
    ) -> Result<Self, Error> {
        if !sys.is_simply_laced() {
            return Err(Error::NotSimplyLaced {
                ctype: sys.ctype.to_string(),
            });
        }
        for (p, lam) in [(&p1, &lam1), (&p2, &lam2)] {
            if !p.is_cominuscule(sys) {
                return Err(Error::NotCominuscule {
                    ctype: sys.ctype.to_string(),
                    node: p.node,
                });
            }
            if dominant_representative(sys, lam) != sys.fundamental_weight(p.node) {
                return Err(Error::WeightNotInOrbit(format_weight(lam)));
            }
        }
        Ok(WeightPair { p1, p2, lam1, lam2 })
    }
}

/// The dominant weight in the W-orbit of `lam`.
pub fn dominant_representative(sys: &RootSystem, lam: &Weight) -> Weight {
    let mut lam = lam.clone();
    loop {
        match (0..sys.rank()).find(|&i| lam[i] < Rat::zero()) {
            None => return lam,
            Some(i) => {
                let c = lam[i];
                let alpha_fund = sys.root_to_fund(&sys.simple_root(i));
                for j in 0..sys.rank() {
                    lam[j] -= c * Rational64::from_integer(alpha_fund[j]);
                }
            }
        }
    }
}

/// `d(lambda_1, lambda_2)`, certified to be a nonnegative integer.
pub fn distance(sys: &RootSystem, pair: &WeightPair) -> Result<usize, Error> {
    let top = sys.inner_ww(
        &sys.fundamental_weight(pair.p1.node),
        &sys.fundamental_weight(pair.p2.node),
    );
    let d = top - sys.inner_ww(&pair.lam1, &pair.lam2);
    if !d.is_integer() {
        return Err(Error::NonIntegralDistance(d.to_string()));
    }
    let d = d.to_integer();
    if d < 0 {
        return Err(Error::Invariant(format!("negative distance {d}")));
    }
    Ok(d as usize)
}

/// Run the greedy algorithm: repeatedly reflect `lambda_2` in the least
/// positive root pairing with opposite signs against the two weights.
/// Returns the sequence of roots used.  Certifies that the roots are
/// mutually orthogonal and that every step decreases the distance by one.
pub fn greedy_sequence(sys: &RootSystem, pair: &WeightPair) -> Result<Vec<Root>, Error> {
    let mut lam2 = pair.lam2.clone();
    let mut gammas: Vec<Root> = Vec::new();
    let mut d = distance(sys, &WeightPair { lam2: lam2.clone(), ..pair.clone() })?;
    loop {
        let gamma = sys
            .positive_roots
            .iter()
            .filter(|g| {
                let a = sys.inner_wr(&pair.lam1, g);
                let b = sys.inner_wr(&lam2, g);
                a * b < Rat::zero()
            })
            .min_by(|a, b| a.cmp(b));
        let gamma = match gamma {
            None => break,
            Some(g) => g.clone(),
        };
        for prev in &gammas {
            if sys.inner_rr(prev, &gamma) != 0 {
                return Err(Error::Invariant(format!(
                    "greedy roots not orthogonal: {prev:?}, {gamma:?}"
                )));
            }
        }
        lam2 = sys.reflect_weight(&gamma, &lam2);
        let d2 = distance(sys, &WeightPair { lam2: lam2.clone(), ..pair.clone() })?;
        if d2 + 1 != d {
            return Err(Error::Invariant(format!(
                "greedy step at {gamma:?} changed distance {d} -> {d2}"
            )));
        }
        d = d2;
        gammas.push(gamma);
    }
    Ok(gammas)
}

/// Independent oracle: the maximum cardinality of a set of mutually
/// orthogonal positive roots pairing with opposite signs against the two
/// weights.  Exhaustive search.
pub fn max_orthogonal_sequence(sys: &RootSystem, pair: &WeightPair) -> Vec<Root> {
    let candidates: Vec<Root> = sys
        .positive_roots
        .iter()
        .filter(|g| {
            let a = sys.inner_wr(&pair.lam1, g);
            let b = sys.inner_wr(&pair.lam2, g);
            a * b < Rat::zero()
        })
        .cloned()
        .collect();
    let mut best: Vec<Root> = Vec::new();
    let mut chosen: Vec<Root> = Vec::new();
    fn search(
        sys: &RootSystem,
        candidates: &[Root],
        from: usize,
        chosen: &mut Vec<Root>,
        best: &mut Vec<Root>,
    ) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if chosen.len() + (candidates.len() - from) <= best.len() {
            return; // cannot beat the current best
        }
        for i in from..candidates.len() {
            let g = &candidates[i];
            if chosen.iter().all(|c| sys.inner_rr(c, g) == 0) {
                chosen.push(g.clone());
                search(sys, candidates, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    search(sys, &candidates, 0, &mut chosen, &mut best);
    best
}

// ---------------------------------------------------------------------------
// Cascades
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CascadeLevel {
    /// Chosen highest root at this level.
    pub theta: Root,
    /// Positive roots of the subsystem at this level.
    pub positive: Vec<Root>,
    /// Whether some root leaving at this level is marked.
    pub nontrivial: bool,
}

#[derive(Clone, Debug)]
pub struct Cascade {
    pub levels: Vec<CascadeLevel>,
}

impl Cascade {
    pub fn rank(&self) -> usize {
        self.levels.iter().filter(|l| l.nontrivial).count()
    }

    pub fn thetas(&self) -> Vec<Root> {
        self.levels.iter().map(|l| l.theta.clone()).collect()
    }

    /// Verify, at every level, that the positive roots leaving the cascade
    /// are exactly theta itself plus the differences theta - beta over roots
    /// beta of the level's subsystem.
    pub fn verify_difference_identity(&self, sys: &RootSystem) -> Result<(), Error> {
        for (li, level) in self.levels.iter().enumerate() {
            let next: Vec<Root> = level
                .positive
                .iter()
                .filter(|r| sys.inner_rr(r, &level.theta) == 0)
                .cloned()
                .collect();
            let mut leaving: Vec<Root> = level
                .positive
                .iter()
                .filter(|r| sys.inner_rr(r, &level.theta) != 0)
                .cloned()
                .collect();
            leaving.sort();
            let in_level = |r: &Root| {
                level.positive.contains(r) || {
                    let neg: Root = r.iter().map(|&c| -c).collect();
                    level.positive.contains(&neg)
                }
            };
            let mut expected: Vec<Root> = vec![level.theta.clone()];
            for beta in &level.positive {
                if beta == &level.theta {
                    continue;
                }
                let diff: Root = level
                    .theta
                    .iter()
                    .zip(beta.iter())
                    .map(|(&a, &b)| a - b)
                    .collect();
                if diff.iter().any(|&c| c != 0) && sys.is_root(&diff) && in_level(&diff) {
                    expected.push(diff);
                }
            }
            expected.sort();
            expected.dedup();
            if leaving != expected {
                return Err(Error::Invariant(format!(
                    "cascade level {li}: leaving set {leaving:?} != theta-differences {expected:?}"
                )));
            }
            let _ = next;
        }
        Ok(())
    }
}

/// Run the cascade on a reflection-closed set of positive roots.  At each
/// level the highest root theta of one irreducible component is removed
/// together with everything not orthogonal to it; for reducible subsystems
/// the component whose highest root has maximal (height, coordinates) is
/// taken first, which makes the construction deterministic.  `marked`
/// decides which roots witness a nontrivial level.
pub fn cascade<F: Fn(&Root) -> bool>(
    sys: &RootSystem,
    start: &[Root],
    marked: F,
) -> Cascade {
    let mut current: Vec<Root> = start.to_vec();
    current.sort();
    let mut levels = Vec::new();
    while !current.is_empty() {
        let comps = subsystem_components(sys, &current);
        let theta = comps
            .iter()
            .map(|c| component_highest_root(sys, c))
            .max_by_key(|t| (RootSystem::height(t), t.clone()))
            .unwrap();
        let (keep, leave): (Vec<Root>, Vec<Root>) = current
            .iter()
            .cloned()
            .partition(|r| sys.inner_rr(r, &theta) == 0);
        let nontrivial = leave.iter().any(|r| marked(r));
        levels.push(CascadeLevel {
            theta,
            positive: current,
            nontrivial,
        });
        current = keep;
    }
    Cascade { levels }
}

// ---------------------------------------------------------------------------
// Orbit ranks
// ---------------------------------------------------------------------------

/// Rank of the G-orbit described by an induction datum: the cascade of the
/// Levi L_R, with levels counted when a leaving root lies in the unipotent
/// radical of Q2.  Fills `datum.orbit_rank`.
pub fn g_orbit_rank(sys: &RootSystem, datum: &mut InductionDatum) -> usize {
    let rank = match datum.q2_node {
        None => 0,
        Some(q2) => {
            let levi_pos = datum.levi_positive_roots(sys);
            cascade(sys, &levi_pos, |r| r[q2] == 1).rank()
        }
    };
    datum.orbit_rank = Some(rank);
    rank
}

/// Rank of the dense orbit for an opposite pair (P1, P2), i.e. the rank of
/// the open G-orbit X itself.  In simply-laced types this is certified
/// against the distance between the highest weight of the first factor and
/// the lowest weight of the second.
pub fn dense_orbit_rank(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
) -> Result<usize, Error> {
    if !parabolics::is_opposite_pair(sys, p1, p2) {
        return Err(Error::NotOppositePair);
    }
    let w0 = weyl::longest_element(sys);
    let mut datum = parabolics::induction_datum(sys, p1, p2, &w0)?;
    if datum.chi_r.iter().any(|&x| x != 0) {
        return Err(Error::Invariant(
            "dense coset of an opposite pair must have chi_R = 0".into(),
        ));
    }
    let s = g_orbit_rank(sys, &mut datum);
    if sys.is_simply_laced() && p1.is_cominuscule(sys) && p2.is_cominuscule(sys) {
        let lam2 = w0.act_weight(sys, &sys.fundamental_weight(p2.node));
        let pair = WeightPair::new(sys, *p1, *p2, sys.fundamental_weight(p1.node), lam2)?;
        let d = distance(sys, &pair)?;
        if d != s {
            return Err(Error::Invariant(format!(
                "cascade rank {s} != distance {d} for the dense orbit"
            )));
        }
    }
    Ok(s)
}
