//! Shadow graphs: the combinatorial model of the weak order on B-orbits of
//! a product of two cominuscule flag varieties (simply-laced types).
//!
//! A B-orbit inside the G-orbit labelled by a double coset w is modelled by
//! a node (w, u, v, rank) with u in W^{P1}, v in W^{P2}.  The minimal orbits
//! have rank 0 and are characterized by a sign condition on the pair (u, v);
//! all other nodes are produced by raising along positive roots gamma,
//! looking only at the two pairings a = (gamma, u varpi_1),
//! b = (gamma, v varpi_2) in {-1, 0, 1}.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::metric::{self, WeightPair};
use crate::parabolics::{self, ParabolicDatum};
use crate::roots::{Root, RootSystem, Weight};
use crate::weyl::{self, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    /// rank preserved (a fibration step).
    U,
    /// rank raised by one.
    T,
    /// rank preserved, with the exceptional split; never produced by
    /// raising in the cominuscule shadow, but observed by the orbit engine.
    N,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowNode {
    pub u: WeylElement,
    pub v: WeylElement,
    pub lam1: Weight,
    pub lam2: Weight,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowEdge {
    pub src: usize,
    pub dst: usize,
    pub gamma: Root,
    pub etype: EdgeType,
}

#[derive(Clone, Debug)]
pub struct ShadowGraph {
    /// Minimal representative of the double coset labelling the G-orbit.
    pub w: WeylElement,
    /// Rank of the G-orbit.
    pub rk: usize,
    pub nodes: Vec<ShadowNode>,
    pub edges: Vec<ShadowEdge>,
}

#[derive(Clone, Debug)]
pub enum RaiseOutcome {
    Raised {
        node: ShadowNode,
        etype: EdgeType,
    },
    /// a <= 0 and b <= 0: the orbit is not raised along this root.
    NotRaised,
}

/// Precomputed coset data for building shadow graphs of one pair (P1, P2).
pub struct ShadowContext<'a> {
    pub sys: &'a RootSystem,
    pub p1: ParabolicDatum,
    pub p2: ParabolicDatum,
    reps1: Vec<weyl::CosetRep>,
    reps2: Vec<weyl::CosetRep>,
    by_weight1: HashMap<Weight, usize>,
    by_weight2: HashMap<Weight, usize>,
}

impl<'a> ShadowContext<'a> {
    pub fn new(
        sys: &'a RootSystem,
        p1: ParabolicDatum,
        p2: ParabolicDatum,
    ) -> Result<Self, Error> {
        if !sys.is_simply_laced() {
            return Err(Error::NotSimplyLaced {
                ctype: sys.ctype.to_string(),
            });
        }
        for p in [&p1, &p2] {
            if !p.is_cominuscule(sys) {
                return Err(Error::NotCominuscule {
                    ctype: sys.ctype.to_string(),
                    node: p.node,
                });
            }
        }
        let reps1 = weyl::min_coset_reps(sys, p1.node)?;
        let reps2 = weyl::min_coset_reps(sys, p2.node)?;
        let by_weight1 = reps1
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.clone(), i))
            .collect();
        let by_weight2 = reps2
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.clone(), i))
            .collect();
        Ok(ShadowContext {
            sys,
            p1,
            p2,
            reps1,
            reps2,
            by_weight1,
            by_weight2,
        })
    }

    pub fn reps1(&self) -> &[weyl::CosetRep] {
        &self.reps1
    }

    pub fn reps2(&self) -> &[weyl::CosetRep] {
        &self.reps2
    }

    /// The minimal (rank 0) nodes of the G-orbit labelled by `w`: pairs
    /// (u, v) of minimal coset representatives with u^{-1} v in the double
    /// coset of w such that no positive root is negative on both
    /// u(chi_{P1}) and v(chi_{P2}).
    pub fn minimal_nodes(&self, w: &WeylElement) -> Vec<ShadowNode> {
        let sys = self.sys;
        let w = parabolics::canonical_double_coset(sys, &self.p1, &self.p2, w);
        let mut out = Vec::new();
        for r1 in &self.reps1 {
            let u_inv = r1.w.inverse(sys);
            for r2 in &self.reps2 {
                let cand = u_inv.mul(sys, &r2.w);
                if parabolics::canonical_double_coset(sys, &self.p1, &self.p2, &cand) != w {
                    continue;
                }
                let v_inv = r2.w.inverse(sys);
                let blocked = sys.positive_roots.iter().any(|alpha| {
                    u_inv.act_root(alpha)[self.p1.node] < 0
                        && v_inv.act_root(alpha)[self.p2.node] < 0
                });
                if !blocked {
                    out.push(ShadowNode {
                        u: r1.w.clone(),
                        v: r2.w.clone(),
                        lam1: r1.weight.clone(),
                        lam2: r2.weight.clone(),
                        rank: 0,
                    });
                }
            }
        }
        out
    }

    /// Attempt to raise a node along a positive root.
    pub fn raise(&self, node: &ShadowNode, gamma: &Root) -> Result<RaiseOutcome, Error> {
        let sys = self.sys;
        let a = small_pairing(sys, &node.lam1, gamma)?;
        let b = small_pairing(sys, &node.lam2, gamma)?;
        let (etype, dr) = if a * b < 0 {
            (EdgeType::T, 1)
        } else if a == 1 || b == 1 {
            (EdgeType::U, 0)
        } else {
            return Ok(RaiseOutcome::NotRaised);
        };
        let (mut u, mut lam1) = (node.u.clone(), node.lam1.clone());
        let (mut v, mut lam2) = (node.v.clone(), node.lam2.clone());
        if a == 1 {
            lam1 = sys.reflect_weight(gamma, &lam1);
            let i = *self.by_weight1.get(&lam1).ok_or_else(|| {
                Error::Invariant("reflected weight left the orbit".into())
            })?;
            u = self.reps1[i].w.clone();
        }
        if b == 1 {
            lam2 = sys.reflect_weight(gamma, &lam2);
            let i = *self.by_weight2.get(&lam2).ok_or_else(|| {
                Error::Invariant("reflected weight left the orbit".into())
            })?;
            v = self.reps2[i].w.clone();
        }
        // l(u) + l(v) strictly increases; both it and the orbit dimension
        // can jump by more than one in a single step when gamma is not
        // simple.
        if u.length() + v.length() <= node.u.length() + node.v.length() {
            return Err(Error::Invariant(format!(
                "raise along {gamma:?} did not increase l(u)+l(v)"
            )));
        }
        Ok(RaiseOutcome::Raised {
            node: ShadowNode {
                u,
                v,
                lam1,
                lam2,
                rank: node.rank + dr,
            },
            etype,
        })
    }

    /// Build the full shadow graph of the G-orbit labelled by `w` by closing
    /// the minimal nodes under raising.  Certifies at every node that
    /// rank + d(lam1, lam2) equals the rank of the G-orbit.
    pub fn graph(&self, w: &WeylElement) -> Result<ShadowGraph, Error> {
        let sys = self.sys;
        let w = parabolics::canonical_double_coset(sys, &self.p1, &self.p2, w);
        let mut datum = parabolics::induction_datum(sys, &self.p1, &self.p2, &w)?;
        let rk = metric::g_orbit_rank(sys, &mut datum);
        let mut nodes = self.minimal_nodes(&w);
        nodes.sort_by(|x, y| (&x.u, &x.v).cmp(&(&y.u, &y.v)));
        let mut index: HashMap<(WeylElement, WeylElement), usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| ((n.u.clone(), n.v.clone()), i))
            .collect();
        if index.len() != nodes.len() {
            return Err(Error::Invariant("duplicate minimal nodes".into()));
        }
        let mut edges: Vec<ShadowEdge> = Vec::new();
        let mut qi = 0usize;
        while qi < nodes.len() {
            let node = nodes[qi].clone();
            self.check_rank_identity(&node, rk)?;
            for gamma in &sys.positive_roots {
                match self.raise(&node, gamma)? {
                    RaiseOutcome::NotRaised => {}
                    RaiseOutcome::Raised { node: next, etype } => {
                        let key = (next.u.clone(), next.v.clone());
                        let dst = match index.get(&key) {
                            Some(&i) => {
                                if nodes[i].rank != next.rank {
                                    return Err(Error::RankCollision(
                                        format!("u={:?} v={:?}", next.u.word(), next.v.word()),
                                        nodes[i].rank,
                                        next.rank,
                                    ));
                                }
                                i
                            }
                            None => {
                                nodes.push(next.clone());
                                index.insert(key, nodes.len() - 1);
                                nodes.len() - 1
                            }
                        };
                        edges.push(ShadowEdge {
                            src: qi,
                            dst,
                            gamma: gamma.clone(),
                            etype,
                        });
                    }
                }
            }
            qi += 1;
        }
        edges.sort_by(|a, b| (a.src, a.dst, &a.gamma).cmp(&(b.src, b.dst, &b.gamma)));
        edges.dedup();
        Ok(ShadowGraph {
            w,
            rk,
            nodes,
            edges,
        })
    }

    /// Shadow graphs for all G-orbits, in double-coset order.
    pub fn all_graphs(&self) -> Result<Vec<ShadowGraph>, Error> {
        parabolics::double_cosets(self.sys, &self.p1, &self.p2)
            .iter()
            .map(|w| self.graph(w))
            .collect()
    }

    fn check_rank_identity(&self, node: &ShadowNode, rk: usize) -> Result<(), Error> {
        let pair = WeightPair::new(
            self.sys,
            self.p1,
            self.p2,
            node.lam1.clone(),
            node.lam2.clone(),
        )?;
        let d = metric::distance(self.sys, &pair)?;
        if node.rank + d != rk {
            return Err(Error::Invariant(format!(
                "rank identity fails: rank {} + d {} != rk {}",
                node.rank, d, rk
            )));
        }
        Ok(())
    }
}

fn small_pairing(sys: &RootSystem, lam: &Weight, gamma: &Root) -> Result<i64, Error> {
    let x = sys.inner_wr(lam, gamma);
    if !x.is_integer() {
        return Err(Error::Invariant(format!("non-integral pairing {x}")));
    }
    let x = x.to_integer();
    if !(-1..=1).contains(&x) {
        return Err(Error::Invariant(format!(
            "pairing {x} out of range for a minuscule weight"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn ctx<'a>(s: &'a RootSystem, n1: usize, n2: usize) -> ShadowContext<'a> {
        ShadowContext::new(
            s,
            ParabolicDatum::new(s, n1).unwrap(),
            ParabolicDatum::new(s, n2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn p1_squared_has_five_orbits() {
        let s = sys("A1");
        let c = ctx(&s, 0, 0);
        let graphs = c.all_graphs().unwrap();
        assert_eq!(graphs.len(), 2);
        let total: usize = graphs.iter().map(|g| g.nodes.len()).sum();
        assert_eq!(total, 5);
        // diagonal orbit: two nodes linked by a U edge, rank stays 0
        let diag = graphs.iter().find(|g| g.w.is_identity()).unwrap();
        assert_eq!(diag.rk, 0);
        assert_eq!(diag.nodes.len(), 2);
        assert_eq!(diag.edges.len(), 1);
        assert_eq!(diag.edges[0].etype, EdgeType::U);
        // open orbit: two minimal nodes raised by T edges into the dense one
        let open = graphs.iter().find(|g| !g.w.is_identity()).unwrap();
        assert_eq!(open.rk, 1);
        assert_eq!(open.nodes.len(), 3);
        assert_eq!(open.edges.len(), 2);
        assert!(open.edges.iter().all(|e| e.etype == EdgeType::T));
        assert_eq!(open.nodes.iter().filter(|n| n.rank == 0).count(), 2);
        assert_eq!(open.nodes.iter().filter(|n| n.rank == 1).count(), 1);
    }

    #[test]
    fn minimal_nodes_lie_in_their_double_coset() {
        // (only minimal nodes satisfy this; raising leaves the coset of
        // u^{-1} v even though the G-orbit label is unchanged)
        let s = sys("A3");
        let c = ctx(&s, 1, 1);
        for w in parabolics::double_cosets(&s, &c.p1, &c.p2) {
            for n in c.minimal_nodes(&w) {
                let cand = n.u.inverse(&s).mul(&s, &n.v);
                assert_eq!(
                    parabolics::canonical_double_coset(&s, &c.p1, &c.p2, &cand),
                    w
                );
                assert_eq!(n.rank, 0);
            }
        }
    }

    #[test]
    fn every_gorbit_reaches_its_rank() {
        for (name, n1, n2) in [("A2", 0usize, 0usize), ("A3", 1, 1), ("A3", 0, 2)] {
            let s = sys(name);
            let c = ctx(&s, n1, n2);
            let graphs = c.all_graphs().unwrap();
            for g in &graphs {
                // some node attains the G-orbit rank, and top nodes have
                // weights at distance zero
                let top: Vec<&ShadowNode> =
                    g.nodes.iter().filter(|n| n.rank == g.rk).collect();
                assert!(!top.is_empty(), "{name}");
                for n in top {
                    let pair =
                        WeightPair::new(&s, c.p1, c.p2, n.lam1.clone(), n.lam2.clone()).unwrap();
                    assert_eq!(metric::distance(&s, &pair).unwrap(), 0);
                }
                // T edges raise rank by one, U edges preserve it
                for e in &g.edges {
                    let dr = g.nodes[e.dst].rank as i64 - g.nodes[e.src].rank as i64;
                    match e.etype {
                        EdgeType::T => assert_eq!(dr, 1),
                        EdgeType::U => assert_eq!(dr, 0),
                        EdgeType::N => panic!("no N edges in a shadow"),
                    }
                }
            }
        }
    }

    #[test]
    fn shadow_never_produces_n_edges() {
        for (name, n1, n2) in [("A3", 1usize, 1usize), ("A3", 1, 0), ("D4", 0, 0)] {
            let s = sys(name);
            let c = ctx(&s, n1, n2);
            for g in c.all_graphs().unwrap() {
                assert!(g.edges.iter().all(|e| e.etype != EdgeType::N), "{name}");
            }
        }
    }

    #[test]
    fn ranks_never_exceed_gorbit_rank() {
        let s = sys("D4");
        let c = ctx(&s, 0, 0);
        for g in c.all_graphs().unwrap() {
            for n in &g.nodes {
                assert!(n.rank <= g.rk);
            }
        }
    }

    #[test]
    fn context_rejects_bad_input() {
        let c3 = sys("C3");
        let p = ParabolicDatum::new(&c3, 2).unwrap();
        assert!(ShadowContext::new(&c3, p, p).is_err());
        let e7 = sys("E7");
        let bad = ParabolicDatum::new(&e7, 0).unwrap(); // not cominuscule
        assert!(ShadowContext::new(&e7, bad, bad).is_err());
    }
}
