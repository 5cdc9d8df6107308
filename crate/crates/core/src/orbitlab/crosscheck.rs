//! Cross-check of the combinatorial shadow against the finite-field engine.
//!
//! In simply-laced cominuscule cases the shadow graph predicts the cells,
//! ranks and minimal orbits of the full B-orbit poset, and `crosscheck`
//! verifies every prediction against the enumerated orbits:
//!
//! - the (gorbit, u, v, rank) labels of the orbits are exactly the shadow
//!   nodes; several orbits may share one label (a Phi-collision, counted,
//!   first seen already on P^2 x P^2);
//! - rank + d(lambda_1, lambda_2) = rk(G-orbit) at every orbit;
//! - the orbits that are full products of Schubert cells are exactly the
//!   sign-minimal shadow nodes;
//! - raising along simple roots (the weak order) never produces an N edge
//!   and always raises the fitted dimension by one;
//! - shadow edges along simple roots between collision-free labels are
//!   reproduced with the same target and type.
//!
//! Outside the simply-laced cominuscule range the engine runs on its own
//! and N edges are counted instead of forbidden.

use std::collections::{HashMap, HashSet};

use crate::error::Error;
use crate::metric::{self, WeightPair};
use crate::parabolics::{self, ParabolicDatum};
use crate::roots::{RootSystem, Weight};
use crate::shadow::{EdgeType, ShadowContext};

use super::engine::{Engine, EngineEdge};

#[derive(Clone, Debug)]
pub struct Crosscheck {
    /// Whether the shadow side ran (simply-laced, both nodes cominuscule).
    pub shadow_mode: bool,
    /// Number of G-orbits (double cosets), equal on both sides.
    pub gorbits: usize,
    /// Number of B-orbits found by the engine.
    pub orbits: usize,
    /// Total number of shadow nodes (zero in engine-only mode).
    pub shadow_nodes: usize,
    /// Engine orbits in excess of the distinct (gorbit, u, v, rank) labels.
    pub phi_collisions: usize,
    /// Orbits that are full products of Schubert cells.
    pub minimal_orbits: usize,
    /// Raised edges found by classifying every orbit along every simple root.
    pub edges_checked: usize,
    /// How many of them came out type N.
    pub n_edges: usize,
    /// Shadow edges verified one-to-one against the engine.
    pub shadow_edges_checked: usize,
}

pub fn crosscheck(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
    qs: &[u32],
    budget: u128,
) -> Result<Crosscheck, Error> {
    let engine = Engine::new(sys, p1, p2, qs, budget)?;
    let shadow_mode =
        sys.is_simply_laced() && p1.is_cominuscule(sys) && p2.is_cominuscule(sys);
    let (edges_checked, n_edges) = classify_all(sys, &engine, shadow_mode)?;
    if !shadow_mode {
        return Ok(Crosscheck {
            shadow_mode,
            gorbits: engine.cosets.len(),
            orbits: engine.orbits.len(),
            shadow_nodes: 0,
            phi_collisions: 0,
            minimal_orbits: 0,
            edges_checked,
            n_edges,
            shadow_edges_checked: 0,
        });
    }

    let ctx = ShadowContext::new(sys, *p1, *p2)?;
    let graphs = ctx.all_graphs()?;
    if graphs.len() != engine.cosets.len()
        || graphs.iter().zip(&engine.cosets).any(|(g, w)| &g.w != w)
    {
        return Err(Error::CrossCheck(
            "shadow and engine disagree on the double cosets".into(),
        ));
    }

    // rank identity: rank + d(Phi) = rk(G-orbit) at every engine orbit
    let rks: Vec<usize> = engine
        .cosets
        .iter()
        .map(|w| {
            let mut datum = parabolics::induction_datum(sys, p1, p2, w)?;
            Ok(metric::g_orbit_rank(sys, &mut datum))
        })
        .collect::<Result<_, Error>>()?;
    for o in &engine.orbits {
        let pair = WeightPair::new(sys, *p1, *p2, o.u_weight.clone(), o.v_weight.clone())?;
        let d = metric::distance(sys, &pair)?;
        if o.rank + d != rks[o.gorbit] {
            return Err(Error::CrossCheck(format!(
                "rank {} + d {} != rk {} in G-orbit {}",
                o.rank, d, rks[o.gorbit], o.gorbit
            )));
        }
    }

    // the (gorbit, u, v, rank) labels must be exactly the shadow nodes;
    // an orbit beyond one per label is a Phi-collision
    type Phi<'x> = (usize, &'x Weight, &'x Weight, usize);
    let mut label_orbits: HashMap<Phi, Vec<usize>> = HashMap::new();
    for (oi, o) in engine.orbits.iter().enumerate() {
        label_orbits
            .entry((o.gorbit, &o.u_weight, &o.v_weight, o.rank))
            .or_default()
            .push(oi);
    }
    let mut node_labels: HashSet<Phi> = HashSet::new();
    for (gi, g) in graphs.iter().enumerate() {
        for n in &g.nodes {
            if !node_labels.insert((gi, &n.lam1, &n.lam2, n.rank)) {
                return Err(Error::CrossCheck(format!(
                    "duplicate shadow node label in G-orbit {gi}"
                )));
            }
        }
    }
    if node_labels != label_orbits.keys().copied().collect() {
        return Err(Error::CrossCheck(
            "shadow node labels and engine orbit labels differ".into(),
        ));
    }
    let shadow_nodes = node_labels.len();
    let phi_collisions = engine.orbits.len() - shadow_nodes;

    // the orbits that are set-theoretic products of their Schubert cells
    // are exactly the sign-minimal shadow nodes
    let len1: HashMap<&Weight, usize> = ctx
        .reps1()
        .iter()
        .map(|r| (&r.weight, r.w.length()))
        .collect();
    let len2: HashMap<&Weight, usize> = ctx
        .reps2()
        .iter()
        .map(|r| (&r.weight, r.w.length()))
        .collect();
    let mut products: HashSet<(usize, &Weight, &Weight)> = HashSet::new();
    for o in &engine.orbits {
        let cells = (len1[&o.u_weight] + len2[&o.v_weight]) as u32;
        if engine
            .qs
            .iter()
            .zip(&o.counts)
            .all(|(&q, &c)| c == (q as u128).pow(cells))
        {
            if o.rank != 0 {
                return Err(Error::CrossCheck(
                    "a product of Schubert cells has positive rank".into(),
                ));
            }
            products.insert((o.gorbit, &o.u_weight, &o.v_weight));
        }
    }
    let mut minimal: HashSet<(usize, &Weight, &Weight)> = HashSet::new();
    let min_nodes: Vec<_> = (0..graphs.len())
        .map(|gi| ctx.minimal_nodes(&graphs[gi].w))
        .collect();
    for (gi, nodes) in min_nodes.iter().enumerate() {
        for n in nodes {
            minimal.insert((gi, &n.lam1, &n.lam2));
        }
    }
    if products != minimal {
        return Err(Error::CrossCheck(format!(
            "{} cell-product orbits but {} sign-minimal shadow nodes, or the \
             labels differ",
            products.len(),
            minimal.len()
        )));
    }

    // shadow edges along simple roots, where both endpoints are
    // collision-free, must be reproduced exactly
    let mut shadow_edges_checked = 0usize;
    for (gi, g) in graphs.iter().enumerate() {
        for e in &g.edges {
            if e.gamma.iter().sum::<i64>() != 1 {
                continue;
            }
            let (s, d) = (&g.nodes[e.src], &g.nodes[e.dst]);
            let from = &label_orbits[&(gi, &s.lam1, &s.lam2, s.rank)];
            let to = &label_orbits[&(gi, &d.lam1, &d.lam2, d.rank)];
            if from.len() != 1 || to.len() != 1 {
                continue;
            }
            match engine.classify_edge(from[0], &e.gamma)? {
                EngineEdge::Raised { target, etype }
                    if target == to[0] && etype == e.etype => {}
                other => {
                    return Err(Error::CrossCheck(format!(
                        "shadow edge along {:?} (type {:?}) came back as {other:?}",
                        e.gamma, e.etype
                    )));
                }
            }
            shadow_edges_checked += 1;
        }
    }

    Ok(Crosscheck {
        shadow_mode,
        gorbits: graphs.len(),
        orbits: engine.orbits.len(),
        shadow_nodes,
        phi_collisions,
        minimal_orbits: products.len(),
        edges_checked,
        n_edges,
        shadow_edges_checked,
    })
}

/// Classify every orbit along every simple root.  In shadow mode an N edge
/// or a missing dimension increment is an error; otherwise N edges are
/// counted.
fn classify_all(
    sys: &RootSystem,
    engine: &Engine,
    forbid_n: bool,
) -> Result<(usize, usize), Error> {
    let mut edges_checked = 0usize;
    let mut n_edges = 0usize;
    for oi in 0..engine.orbits.len() {
        for i in 0..sys.rank() {
            let alpha = sys.simple_root(i);
            match engine.classify_edge(oi, &alpha)? {
                EngineEdge::NotRaised => {}
                EngineEdge::Raised { target, etype } => {
                    edges_checked += 1;
                    if engine.orbits[target].dim != engine.orbits[oi].dim + 1 {
                        return Err(Error::CrossCheck(format!(
                            "simple edge at orbit {oi} skips a dimension"
                        )));
                    }
                    if etype == EdgeType::N {
                        if forbid_n {
                            return Err(Error::CrossCheck(format!(
                                "N edge at orbit {oi} along simple root {i} in a \
                                 simply-laced shadow"
                            )));
                        }
                        n_edges += 1;
                    }
                }
            }
        }
    }
    Ok((edges_checked, n_edges))
}
