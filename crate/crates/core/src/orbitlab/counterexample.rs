//! A concrete Sp_6 configuration on pairs of Lagrangian subspaces of F^6
//! witnessing an N-type edge: the weak-order raising whose generic fiber is
//! the normalizer of a torus rather than a torus or a unipotent group.
//! No such edge exists for pairs of cominuscule flag varieties of simply
//! laced groups, so this configuration marks the exact boundary of the
//! simply-laced theory implemented in `metric` and `shadow`.
//!
//! All four orbits live on X = LG(3,6) x LG(3,6) with the second component
//! fixed to span(e3, e4, e5).  Their first components are chosen so that
//! the two distinct dimension-9 orbits are reached from the dimension-8 one
//! by a U edge and an N edge respectively.

use super::engine::{Engine, EngineEdge};
use super::field::Fp;
use super::flag::{omega_matrix_over, Subspace};
use super::group::dim_v;
use super::mat::Mat;
use crate::error::Error;
use crate::parabolics::ParabolicDatum;
use crate::roots::RootSystem;
use crate::shadow::EdgeType;

/// The common second component span(e3, e4, e5).
pub fn second_component() -> Subspace {
    Subspace::coordinate(6, &[3, 4, 5])
}

/// First components of the four points x0, x1, x2, x over F_q.
pub fn first_components(f: Fp) -> [Subspace; 4] {
    let span = |rows: &[[u32; 6]]| {
        Subspace::from_span(6, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), f)
    };
    [
        // x0: <e0, e1 + e3, e2 + e4>
        span(&[[1, 0, 0, 0, 0, 0], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0]]),
        // x1: <e1, e0 + e3, e2 + e5>
        span(&[[0, 1, 0, 0, 0, 0], [1, 0, 0, 1, 0, 0], [0, 0, 1, 0, 0, 1]]),
        // x2: <e0, e2 + e3, e1 + e4>
        span(&[[1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 1, 0, 0, 1, 0]]),
        // x: <e2, e0 + e4, e1 + e5>
        span(&[[0, 0, 1, 0, 0, 0], [1, 0, 0, 0, 1, 0], [0, 1, 0, 0, 0, 1]]),
    ]
}

/// A sign twist of x2: the second connecting matrix actually carries x0 to
/// this point, which lies in the same geometric orbit as x2 but (over F_q)
/// in a different rational class of it.
pub fn twisted_second_point(f: Fp) -> Subspace {
    Subspace::from_span(
        6,
        &[
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, f.neg(1), 0, 0],
            vec![0, 1, 0, 0, 1, 0],
        ],
        f,
    )
}

/// One edge of the configuration: source and target index into the points
/// x0, x1, x2, x, raised along the given simple root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigEdge {
    pub src: usize,
    pub dst: usize,
    pub simple: usize,
    pub etype: EdgeType,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    /// Engine orbit ids of x0, x1, x2, x.
    pub orbit_ids: [usize; 4],
    pub dims: [usize; 4],
    pub ranks: [usize; 4],
    /// Number of B(F_q)-classes each orbit splits into.
    pub forms: [usize; 4],
    /// The common G-orbit (index into the engine's double cosets).
    pub gorbit: usize,
    pub edges: [ConfigEdge; 3],
}

/// Enumerate the orbits over the given odd primes and certify the whole
/// configuration: dimensions 8, 9, 9, 10; a U edge x0 -> x1, a U edge
/// x1 -> x, and an N edge x0 -> x2; and x1, x2 in distinct orbits of the
/// same G-orbit.  Edge types are computed by the engine's two independent
/// routes (coset multiplicities, and fitted dimension/rank deltas), which
/// must already agree internally.
pub fn run(qs: &[u32], budget: u128) -> Result<CounterexampleReport, Error> {
    let sys = RootSystem::new("C3".parse().unwrap());
    let p = ParabolicDatum::new(&sys, 2)?;
    let engine = Engine::new(&sys, &p, &p, qs, budget)?;
    let v2 = second_component();
    let mut orbit_ids = [0usize; 4];
    for (qi, &_q) in qs.iter().enumerate() {
        let points = first_components(Fp::new(qs[qi])?);
        let ids: Vec<usize> = points
            .iter()
            .map(|v1| engine.orbit_of_point(qi, v1, &v2))
            .collect::<Result<_, _>>()?;
        if qi == 0 {
            orbit_ids.copy_from_slice(&ids);
        } else if orbit_ids.as_slice() != ids.as_slice() {
            return Err(Error::CrossCheck(
                "configuration points land in different orbits over different fields".into(),
            ));
        }
    }
    // the twisted variant of x2 lies in the same geometric orbit, in a
    // different rational class; this is what the matrix route produces
    for (qi, &q) in qs.iter().enumerate() {
        let twisted = twisted_second_point(Fp::new(q)?);
        if engine.orbit_of_point(qi, &twisted, &v2)? != orbit_ids[2] {
            return Err(Error::CrossCheck(
                "twisted point left the orbit of x2".into(),
            ));
        }
    }
    let orbit = |i: usize| &engine.orbits[orbit_ids[i]];
    let dims = [orbit(0).dim, orbit(1).dim, orbit(2).dim, orbit(3).dim];
    if dims != [8, 9, 9, 10] {
        return Err(Error::CrossCheck(format!(
            "configuration dimensions are {dims:?}, expected [8, 9, 9, 10]"
        )));
    }
    if orbit_ids[1] == orbit_ids[2] {
        return Err(Error::CrossCheck(
            "the two dimension-9 orbits coincide".into(),
        ));
    }
    let gorbit = orbit(0).gorbit;
    if (1..4).any(|i| orbit(i).gorbit != gorbit) {
        return Err(Error::CrossCheck(
            "configuration points lie in different G-orbits".into(),
        ));
    }

    let expected = [
        ConfigEdge { src: 0, dst: 1, simple: 0, etype: EdgeType::U },
        ConfigEdge { src: 1, dst: 3, simple: 1, etype: EdgeType::U },
        ConfigEdge { src: 0, dst: 2, simple: 1, etype: EdgeType::N },
    ];
    for e in &expected {
        let gamma = sys.simple_root(e.simple);
        match engine.classify_edge(orbit_ids[e.src], &gamma)? {
            EngineEdge::Raised { target, etype }
                if target == orbit_ids[e.dst] && etype == e.etype => {}
            other => {
                return Err(Error::CrossCheck(format!(
                    "edge {} -> {} along simple root {}: expected {:?}, got {other:?}",
                    e.src, e.dst, e.simple, e.etype
                )));
            }
        }
    }
    Ok(CounterexampleReport {
        orbit_ids,
        dims,
        ranks: [orbit(0).rank, orbit(1).rank, orbit(2).rank, orbit(3).rank],
        forms: [orbit(0).forms, orbit(1).forms, orbit(2).forms, orbit(3).forms],
        gorbit,
        edges: expected,
    })
}

/// The three explicit group elements connecting the points:
/// p1(x0) = x1 in the minimal parabolic of alpha_0, p2(x0) = a sign twist
/// of x2 in the one of alpha_1 (p2 needs sqrt(2) in F_q), and p(x1) = x,
/// also for alpha_1.
fn connecting_matrices(f: Fp) -> Result<[(Mat, usize); 3], Error> {
    let r = f
        .sqrt(f.inv(2))
        .ok_or_else(|| Error::Invariant(format!("1/2 is not a square mod {}", f.p)))?;
    let nr = f.neg(r);
    // swaps (e0, e1) and (e4, e5)
    let p1 = Mat::from_rows(&[
        vec![0, 1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 1, 0],
    ]);
    // rotation by sqrt(1/2) in the (e1, e2) and (e3, e4) planes
    let p2 = Mat::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, r, r, 0, 0, 0],
        vec![0, r, nr, 0, 0, 0],
        vec![0, 0, 0, nr, r, 0],
        vec![0, 0, 0, r, r, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]);
    // swaps (e1, e2) and (e3, e4)
    let p = Mat::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]);
    Ok([(p1, 0), (p2, 1), (p, 1)])
}

/// Certify the matrix route to the same configuration over one odd prime
/// with sqrt(2): the connecting elements are symplectic, lie in the claimed
/// minimal parabolics, fix the second component, and carry x0 to x1, x0 to
/// x2, and x1 to x.
pub fn verify_matrix_identities(q: u32) -> Result<(), Error> {
    let sys = RootSystem::new("C3".parse().unwrap());
    let f = Fp::new(q)?;
    let n = dim_v(&sys)?;
    let mats = connecting_matrices(f)?;
    let j = omega_matrix_over(n, f);
    let points = first_components(f);
    let v2 = second_component();
    let targets = [
        points[1].clone(),
        // p2 lands on a sign twist of x2 inside the same geometric orbit
        twisted_second_point(f),
        points[3].clone(),
    ];
    let sources = [0usize, 0, 1];
    for (((g, node), src), target) in mats.iter().zip(sources).zip(targets.iter()) {
        if g.transpose().mul(&j, f).mul(g, f) != j {
            return Err(Error::Invariant("connecting matrix is not symplectic".into()));
        }
        // membership in the minimal parabolic of alpha_node: the element
        // stabilizes every standard isotropic prefix except the one the
        // parabolic forgets
        for k in 1..=n / 2 {
            let e_k = Subspace::coordinate(n, &(0..k).collect::<Vec<_>>());
            let fixed = e_k.apply(g, f) == e_k;
            if fixed == (k == node + 1) {
                return Err(Error::Invariant(format!(
                    "connecting matrix is not in the minimal parabolic of alpha_{node}"
                )));
            }
        }
        if v2.apply(g, f) != v2 {
            return Err(Error::Invariant(
                "connecting matrix moves the second component".into(),
            ));
        }
        if points[src].apply(g, f) != *target {
            return Err(Error::Invariant(format!(
                "connecting matrix does not carry point {src} to its target"
            )));
        }
    }
    Ok(())
}
