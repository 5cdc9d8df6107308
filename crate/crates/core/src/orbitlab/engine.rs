//! Exhaustive enumeration of B(F_q)-orbits on a product of two (isotropic)
//! Grassmannians, for several primes q at once.
//!
//! The enumeration never walks over pairs directly.  Each orbit meets the
//! slice { (V1, E_J) } where E_J is the coordinate representative of the
//! Schubert cell of V2: orbits correspond to pairs
//!
//!   (cell J of V2, Stab_B(E_J)-orbit of V1),
//!
//! and the orbit size is |cell| * |fiber orbit|.  Orbits are matched across
//! fields by a vector of B-invariant dimensions (and symplectic ranks), and
//! every matching step is a hard error if it is not a clean bijection.

use std::collections::HashMap;

use super::field::Fp;
use super::flag::{
    enumerate_subspaces, intersection, intersection_dim, omega_rank, perp, sum, Subspace,
};
use super::group::{
    basis_weight, borel_gens, dim_v, is_symplectic, jumpset_weight, node_subspace_dim,
    reflection_lift, root_matrix, torus_gens, weyl_matrix,
};
use super::mat::Mat;
use crate::error::Error;
use crate::parabolics::{double_cosets, ParabolicDatum};
use crate::roots::{Root, RootSystem, Weight};
use crate::shadow::EdgeType;
use crate::weyl::{min_coset_reps, CosetRep, WeylElement};

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Number of isotropic k-subspaces of a symplectic space of dimension 2m.
pub fn isotropic_count(m: usize, k: usize, q: u128) -> u128 {
    let mut extra = 1u128;
    for i in 0..k {
        extra *= q.pow((m - i) as u32) + 1;
    }
    gaussian_binomial(m, k, q) * extra
}

/// Number of F_q-points of the flag variety G/P (node convention: node i
/// marks (i+1)-dimensional subspaces).
pub fn flag_point_count(sys: &RootSystem, p: &ParabolicDatum, q: u128) -> Result<u128, Error> {
    let n = dim_v(sys)?;
    let k = node_subspace_dim(p.node);
    Ok(if is_symplectic(sys) {
        isotropic_count(n / 2, k, q)
    } else {
        gaussian_binomial(n, k, q)
    })
}

/// Rough working-set size of `Engine::new`: the fiber partitions walk the
/// first flag variety once per Schubert cell of the second.
pub fn estimate_work(
    sys: &RootSystem,
    p1: &ParabolicDatum,
    p2: &ParabolicDatum,
    qs: &[u32],
) -> Result<u128, Error> {
    let ncells = min_coset_reps(sys, p2.node)?.len() as u128;
    let mut total = 0u128;
    for &q in qs {
        let f1 = flag_point_count(sys, p1, q as u128)?;
        let f2 = flag_point_count(sys, p2, q as u128)?;
        total += f1 * (ncells + 1) + 2 * f2;
    }
    Ok(total)
}

/// A B-orbit on X = G/P1 x G/P2, identified across all fields of the engine.
#[derive(Clone, Debug)]
pub struct EngineOrbit {
    /// B-invariant signature used to match the orbit across fields.
    pub signature: Vec<u64>,
    /// Point count over each field, parallel to `Engine::qs`.
    pub counts: Vec<u128>,
    /// Fitted dimension: |O(F_q)| = q^(dim-rank) (q-1)^rank.
    pub dim: usize,
    /// Fitted rank.
    pub rank: usize,
    /// Number of B(F_q)-classes the orbit splits into (more than one only
    /// when the stabilizer is disconnected, which requires type C here).
    pub forms: usize,
    /// Index into `Engine::cosets` of the G-orbit containing this orbit.
    pub gorbit: usize,
    /// Weight w(varpi_1) of the Schubert cell the orbit projects to in G/P1.
    pub u_weight: Weight,
    /// Weight of the cell in G/P2.
    pub v_weight: Weight,
}

struct CellData {
    jump: Vec<usize>,
    size: u64,
    /// flags1 index -> fiber orbit id under Stab_B(E_J).
    fiber_of: Vec<u32>,
    /// fiber id -> smallest flags1 index in the fiber.
    fiber_rep: Vec<u32>,
    fiber_size: Vec<u64>,
}

/// One geometric orbit as seen over a single field: possibly several
/// B(F_q)-classes sharing all invariants.
struct OrbitRecord {
    signature: Vec<u64>,
    /// (cell, fiber) of each merged class.
    members: Vec<(usize, u32)>,
    count: u128,
}

struct QData {
    f: Fp,
    flags1: Vec<Subspace>,
    idx1: HashMap<Subspace, u32>,
    n_flags2: usize,
    cells: Vec<CellData>,
    cell_by_jump: HashMap<Vec<usize>, usize>,
    /// Per cell: V2 -> an element b of B with b(E_J) = V2.
    paths: Vec<HashMap<Subspace, Mat>>,
    /// (cell, fiber) -> global orbit index.
    orbit_lookup: HashMap<(usize, u32), usize>,
    /// Global orbit index -> (cell, flags1 rep index).
    reps: Vec<(usize, u32)>,
}

pub struct Engine<'a> {
    pub sys: &'a RootSystem,
    pub p1: ParabolicDatum,
    pub p2: ParabolicDatum,
    pub qs: Vec<u32>,
    /// Minimal double coset representatives, indexing the G-orbits.
    pub cosets: Vec<WeylElement>,
    pub orbits: Vec<EngineOrbit>,
    reps1: Vec<CosetRep>,
    reps2: Vec<CosetRep>,
    qdata: Vec<QData>,
}

/// Result of pushing an orbit through the rank-one subgroup of a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineEdge {
    /// The orbit is already dense in its span under the subgroup.
    NotRaised,
    Raised { target: usize, etype: EdgeType },
}

/// B-invariants of a pair of subspaces: intersection data against every
/// member of the standard flag, plus symplectic ranks when applicable.
fn invariant_signature(v1: &Subspace, v2: &Subspace, f: Fp, symplectic: bool) -> Vec<u64> {
    let n = v1.n;
    let both = intersection(v1, v2, f);
    let total = sum(v1, v2, f);
    let mut sig = vec![both.dim() as u64];
    let mut slices1 = Vec::with_capacity(n);
    let mut slices2 = Vec::with_capacity(n);
    for i in 1..=n {
        let e = Subspace::coordinate(n, &(0..i).collect::<Vec<_>>());
        slices1.push(intersection(v1, &e, f));
        slices2.push(intersection(v2, &e, f));
        sig.push(slices1.last().unwrap().dim() as u64);
        sig.push(slices2.last().unwrap().dim() as u64);
        sig.push(intersection_dim(&both, &e, f) as u64);
        sig.push(intersection_dim(&sum(&e, v1, f), v2, f) as u64);
        sig.push(intersection_dim(&sum(&e, v2, f), v1, f) as u64);
        sig.push(intersection_dim(&total, &e, f) as u64);
    }
    // mixed invariants involving two flag members; dim(E_i cap (V_1 + (E_j
    // cap V_2))) is what first separates two orbits of transverse planes in
    // Gr(2,4)^2
    for i in 1..=n {
        let e = Subspace::coordinate(n, &(0..i).collect::<Vec<_>>());
        for j in 0..n {
            sig.push(intersection_dim(&e, &sum(v1, &slices2[j], f), f) as u64);
            sig.push(intersection_dim(&e, &sum(v2, &slices1[j], f), f) as u64);
        }
    }
    if symplectic {
        let p1 = perp(v1, f);
        let p2 = perp(v2, f);
        let p1v2 = intersection(&p1, v2, f);
        let p2v1 = intersection(&p2, v1, f);
        let p1p2 = intersection(&p1, &p2, f);
        sig.push(p1v2.dim() as u64);
        sig.push(p2v1.dim() as u64);
        sig.push(p1p2.dim() as u64);
        for i in 1..=n {
            let e = Subspace::coordinate(n, &(0..i).collect::<Vec<_>>());
            sig.push(intersection_dim(&p1v2, &e, f) as u64);
            sig.push(intersection_dim(&p2v1, &e, f) as u64);
            sig.push(intersection_dim(&p1p2, &e, f) as u64);
        }
        for a in &slices1 {
            for b in &slices2 {
                sig.push(omega_rank(a, b, f) as u64);
            }
        }
    }
    sig
}

/// Unique (dim, rank) with count(q) = q^(dim-rank) (q-1)^rank for all q.
fn fit_dim_rank(qs: &[u32], counts: &[u128]) -> Result<(usize, usize), Error> {
    let bits = counts[0].max(1).ilog2() as usize + 2;
    let mut fits = Vec::new();
    for a in 0..=bits {
        for r in 0..=bits {
            let ok = qs.iter().zip(counts).all(|(&q, &c)| {
                let q = q as u128;
                q.checked_pow(a as u32)
                    .and_then(|x| x.checked_mul((q - 1).pow(r as u32)))
                    == Some(c)
            });
            if ok {
                fits.push((a + r, r));
            }
        }
    }
    match fits.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::NoPolynomialFit(
            qs.iter().copied().zip(counts.iter().copied()).collect(),
        )),
    }
}

impl<'a> Engine<'a> {
    pub fn new(
        sys: &'a RootSystem,
        p1: &ParabolicDatum,
        p2: &ParabolicDatum,
        qs: &[u32],
        budget: u128,
    ) -> Result<Self, Error> {
        let n = dim_v(sys)?;
        let symplectic = is_symplectic(sys);
        if symplectic && qs.contains(&2) {
            // symmetric bilinear forms degenerate to alternating ones in
            // characteristic 2, changing the orbit structure itself
            return Err(Error::UnsupportedGroup(
                "symplectic orbit enumeration in characteristic 2".into(),
            ));
        }
        let k1 = node_subspace_dim(p1.node);
        let k2 = node_subspace_dim(p2.node);
        let estimate = estimate_work(sys, p1, p2, qs)?;
        if estimate > budget {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        let reps1 = min_coset_reps(sys, p1.node)?;
        let reps2 = min_coset_reps(sys, p2.node)?;
        let by_weight2: HashMap<Weight, usize> = reps2
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.clone(), i))
            .collect();
        let cosets = double_cosets(sys, p1, p2);

        let mut qdata = Vec::new();
        let mut per_q_orbits: Vec<Vec<OrbitRecord>> = Vec::new();
        for &q in qs {
            let f = Fp::new(q)?;
            let flags1 = {
                let mut v = enumerate_subspaces(n, k1, f, symplectic);
                v.sort();
                v
            };
            let idx1: HashMap<Subspace, u32> = flags1
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            let mut flags2 = enumerate_subspaces(n, k2, f, symplectic);
            flags2.sort();
            if flags1.len() as u128 != flag_point_count(sys, p1, q as u128)?
                || flags2.len() as u128 != flag_point_count(sys, p2, q as u128)?
            {
                return Err(Error::Invariant(format!(
                    "flag point count mismatch over F_{q}"
                )));
            }

            // group the second flag variety by Schubert cell
            let mut by_jump: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for (i, v) in flags2.iter().enumerate() {
                by_jump.entry(v.jump_set()).or_default().push(i);
            }
            if by_jump.len() != reps2.len() {
                return Err(Error::Invariant(format!(
                    "{} cells over F_{q} but {} minimal coset representatives",
                    by_jump.len(),
                    reps2.len()
                )));
            }
            let mut jumps: Vec<Vec<usize>> = by_jump.keys().cloned().collect();
            jumps.sort();

            let bgens = borel_gens(sys, f)?;
            let tgens = torus_gens(sys, f)?;
            let mut cells = Vec::new();
            let mut paths = Vec::new();
            let mut cell_by_jump = HashMap::new();
            for (ci, jump) in jumps.iter().enumerate() {
                let members = &by_jump[jump];
                let rep = &reps2[*by_weight2
                    .get(&jumpset_weight(sys, jump))
                    .ok_or_else(|| {
                        Error::Invariant(format!("cell {jump:?} has no matching coset weight"))
                    })?];
                if members.len() as u64 != (q as u64).pow(rep.w.length() as u32) {
                    return Err(Error::Invariant(format!(
                        "cell {jump:?} over F_{q} has {} points, expected q^{}",
                        members.len(),
                        rep.w.length()
                    )));
                }
                // B acts transitively on the cell: BFS from E_J must cover it,
                // recording a reaching group element for each point.
                let base = Subspace::coordinate(n, jump);
                let mut path: HashMap<Subspace, Mat> = HashMap::new();
                path.insert(base.clone(), Mat::identity(n));
                let mut queue = vec![base];
                let mut qi = 0usize;
                while qi < queue.len() {
                    let v = queue[qi].clone();
                    qi += 1;
                    let reach = path[&v].clone();
                    for g in &bgens {
                        let w = v.apply(g, f);
                        if !path.contains_key(&w) {
                            path.insert(w.clone(), g.mul(&reach, f));
                            queue.push(w);
                        }
                    }
                }
                if path.len() != members.len() {
                    return Err(Error::Invariant(format!(
                        "cell {jump:?} over F_{q} is not a single B-orbit"
                    )));
                }

                // fiber partition of the first flag variety under Stab_B(E_J)
                let base = Subspace::coordinate(n, jump);
                let mut sgens = tgens.clone();
                for r in &sys.positive_roots {
                    if base.apply(&root_matrix(sys, f, r, 1)?, f) == base {
                        for t in 1..q {
                            sgens.push(root_matrix(sys, f, r, t)?);
                        }
                    }
                }
                let mut fiber_of = vec![u32::MAX; flags1.len()];
                let mut fiber_rep = Vec::new();
                let mut fiber_size = Vec::new();
                for start in 0..flags1.len() {
                    if fiber_of[start] != u32::MAX {
                        continue;
                    }
                    let fid = fiber_rep.len() as u32;
                    fiber_rep.push(start as u32);
                    fiber_of[start] = fid;
                    let mut queue = vec![start];
                    let mut qi = 0usize;
                    while qi < queue.len() {
                        let v = flags1[queue[qi]].clone();
                        qi += 1;
                        for g in &sgens {
                            let w = v.apply(g, f);
                            let i = idx1[&w] as usize;
                            if fiber_of[i] == u32::MAX {
                                fiber_of[i] = fid;
                                queue.push(i);
                            }
                        }
                    }
                    fiber_size.push(queue.len() as u64);
                }
                cell_by_jump.insert(jump.clone(), ci);
                cells.push(CellData {
                    jump: jump.clone(),
                    size: members.len() as u64,
                    fiber_of,
                    fiber_rep,
                    fiber_size,
                });
                paths.push(path);
            }

            // orbit classes for this field, keyed by invariant signature
            let mut classes: Vec<(Vec<u64>, usize, u32, u128)> = Vec::new();
            for (ci, cell) in cells.iter().enumerate() {
                let e_j = Subspace::coordinate(n, &cell.jump);
                for fid in 0..cell.fiber_rep.len() {
                    let v1 = &flags1[cell.fiber_rep[fid] as usize];
                    let sig = invariant_signature(v1, &e_j, f, symplectic);
                    let count = cell.size as u128 * cell.fiber_size[fid] as u128;
                    classes.push((sig, ci, fid as u32, count));
                }
            }
            classes.sort();
            // A geometric orbit whose stabilizer is disconnected splits into
            // several B(F_q)-classes; these share every invariant and are
            // merged here.  In type A the stabilizers are connected, so a
            // collision there is an error, not a split.
            let mut records: Vec<OrbitRecord> = Vec::new();
            for class in classes {
                match records.last_mut() {
                    Some(prev) if prev.signature == class.0 => {
                        if !symplectic {
                            return Err(Error::OrbitMatching(format!(
                                "two orbits over F_{q} share a signature in a linear group"
                            )));
                        }
                        prev.members.push((class.1, class.2));
                        prev.count += class.3;
                    }
                    _ => records.push(OrbitRecord {
                        signature: class.0,
                        members: vec![(class.1, class.2)],
                        count: class.3,
                    }),
                }
            }
            let total: u128 = records.iter().map(|r| r.count).sum();
            if total != flags1.len() as u128 * flags2.len() as u128 {
                return Err(Error::Invariant(format!(
                    "orbit sizes over F_{q} do not sum to |X(F_q)|"
                )));
            }
            per_q_orbits.push(records);
            qdata.push(QData {
                f,
                flags1,
                idx1,
                n_flags2: flags2.len(),
                cells,
                cell_by_jump,
                paths,
                orbit_lookup: HashMap::new(),
                reps: Vec::new(),
            });
        }

        // match orbits across fields: signatures and class multiplicities
        // must coincide
        for k in 1..per_q_orbits.len() {
            if per_q_orbits[0].len() != per_q_orbits[k].len() {
                return Err(Error::OrbitMatching(format!(
                    "{} orbits over F_{} but {} over F_{}",
                    per_q_orbits[0].len(),
                    qs[0],
                    per_q_orbits[k].len(),
                    qs[k]
                )));
            }
            for (a, b) in per_q_orbits[0].iter().zip(per_q_orbits[k].iter()) {
                if a.signature != b.signature {
                    return Err(Error::OrbitMatching(format!(
                        "orbit signatures over F_{} and F_{} do not agree: {:?} vs {:?}",
                        qs[0], qs[k], a.signature, b.signature
                    )));
                }
                if a.members.len() != b.members.len() {
                    return Err(Error::OrbitMatching(format!(
                        "orbit with signature {:?} splits into {} classes over F_{} \
                         but {} over F_{}",
                        a.signature,
                        a.members.len(),
                        qs[0],
                        b.members.len(),
                        qs[k]
                    )));
                }
            }
        }
        for (k, records) in per_q_orbits.iter().enumerate() {
            for (oi, rec) in records.iter().enumerate() {
                for &(ci, fid) in &rec.members {
                    qdata[k].orbit_lookup.insert((ci, fid), oi);
                }
                let (ci, fid) = rec.members[0];
                let rep1 = qdata[k].cells[ci].fiber_rep[fid as usize];
                qdata[k].reps.push((ci, rep1));
            }
        }

        let mut engine = Engine {
            sys,
            p1: *p1,
            p2: *p2,
            qs: qs.to_vec(),
            cosets,
            orbits: Vec::new(),
            reps1,
            reps2,
            qdata,
        };
        engine.build_orbit_table(&per_q_orbits)?;
        Ok(engine)
    }

    fn build_orbit_table(&mut self, per_q_orbits: &[Vec<OrbitRecord>]) -> Result<(), Error> {
        let by_weight1: HashMap<Weight, usize> = self
            .reps1
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.clone(), i))
            .collect();
        // G-orbit labels: invariants of the T-fixed pair of each double coset
        let coset_invariants = self.coset_invariants()?;
        let mut label_of: HashMap<(usize, usize), usize> = HashMap::new();
        for (wi, inv) in coset_invariants.iter().enumerate() {
            if label_of.insert(*inv, wi).is_some() {
                return Err(Error::Invariant(format!(
                    "double cosets {inv:?} share the same pair invariants"
                )));
            }
        }

        for oi in 0..per_q_orbits[0].len() {
            let signature = per_q_orbits[0][oi].signature.clone();
            let forms = per_q_orbits[0][oi].members.len();
            let counts: Vec<u128> = per_q_orbits.iter().map(|r| r[oi].count).collect();
            let (dim, rank) = fit_dim_rank(&self.qs, &counts)?;
            let mut u_weight = None;
            let mut v_weight = None;
            let mut label = None;
            for qd in &self.qdata {
                let (ci, rep1) = qd.reps[oi];
                let v1 = &qd.flags1[rep1 as usize];
                let v2 = Subspace::coordinate(v1.n, &qd.cells[ci].jump);
                let uw = jumpset_weight(self.sys, &v1.jump_set());
                let vw = jumpset_weight(self.sys, &qd.cells[ci].jump);
                if !by_weight1.contains_key(&uw) {
                    return Err(Error::Invariant(format!(
                        "orbit projects to unknown cell weight {uw:?} in G/P1"
                    )));
                }
                let inv = (
                    intersection_dim(v1, &v2, qd.f),
                    if is_symplectic(self.sys) {
                        omega_rank(v1, &v2, qd.f)
                    } else {
                        0
                    },
                );
                let this_label = *label_of.get(&inv).ok_or_else(|| {
                    Error::OrbitMatching(format!(
                        "orbit invariants {inv:?} match no double coset"
                    ))
                })?;
                for (prev, cur) in [
                    (&u_weight, &uw),
                    (&v_weight, &vw),
                ] {
                    if prev.as_ref().is_some_and(|p| p != cur) {
                        return Err(Error::OrbitMatching(
                            "matched orbits project to different cells".into(),
                        ));
                    }
                }
                if label.is_some_and(|l: usize| l != this_label) {
                    return Err(Error::OrbitMatching(
                        "matched orbits lie in different G-orbits".into(),
                    ));
                }
                u_weight = Some(uw);
                v_weight = Some(vw);
                label = Some(this_label);
            }
            self.orbits.push(EngineOrbit {
                signature,
                counts,
                dim,
                rank,
                forms,
                gorbit: label.unwrap(),
                u_weight: u_weight.unwrap(),
                v_weight: v_weight.unwrap(),
            });
        }
        // every G-orbit must be realized
        let mut seen = vec![false; self.cosets.len()];
        for o in &self.orbits {
            seen[o.gorbit] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Invariant(
                "some double coset has no orbit attached".into(),
            ));
        }
        Ok(())
    }

    /// (dim(V1 cap V2), rank of omega) of the T-fixed pair of each coset,
    /// checked to be the same over every field.
    fn coset_invariants(&self) -> Result<Vec<(usize, usize)>, Error> {
        let n = dim_v(self.sys)?;
        let k1 = node_subspace_dim(self.p1.node);
        let k2 = node_subspace_dim(self.p2.node);
        let mut out = Vec::new();
        for w in &self.cosets {
            let mut inv = None;
            for qd in &self.qdata {
                let f = qd.f;
                let g = weyl_matrix(self.sys, f, w)?;
                let v1 = Subspace::coordinate(n, &(0..k1).collect::<Vec<_>>());
                let v2 = Subspace::coordinate(n, &(0..k2).collect::<Vec<_>>()).apply(&g, f);
                let this = (
                    intersection_dim(&v1, &v2, f),
                    if is_symplectic(self.sys) {
                        omega_rank(&v1, &v2, f)
                    } else {
                        0
                    },
                );
                if inv.is_some_and(|p| p != this) {
                    return Err(Error::Invariant(
                        "T-fixed pair invariants depend on the field".into(),
                    ));
                }
                inv = Some(this);
            }
            out.push(inv.unwrap());
        }
        Ok(out)
    }

    pub fn reps1(&self) -> &[CosetRep] {
        &self.reps1
    }

    pub fn reps2(&self) -> &[CosetRep] {
        &self.reps2
    }

    /// A representative (V1, V2) of the orbit over qs[qi].
    pub fn orbit_rep(&self, qi: usize, orbit: usize) -> (Subspace, Subspace) {
        let qd = &self.qdata[qi];
        let (ci, rep1) = qd.reps[orbit];
        let v1 = qd.flags1[rep1 as usize].clone();
        let v2 = Subspace::coordinate(v1.n, &qd.cells[ci].jump);
        (v1, v2)
    }

    /// The orbit containing a concrete pair of subspaces over qs[qi].
    pub fn orbit_of_point(&self, qi: usize, v1: &Subspace, v2: &Subspace) -> Result<usize, Error> {
        let qd = &self.qdata[qi];
        let f = qd.f;
        let ci = *qd
            .cell_by_jump
            .get(&v2.jump_set())
            .ok_or_else(|| Error::Invariant(format!("no cell with jump set {:?}", v2.jump_set())))?;
        let b = qd.paths[ci]
            .get(v2)
            .ok_or_else(|| Error::Invariant("point not reached by its cell".into()))?;
        let binv = b
            .inverse(f)
            .ok_or_else(|| Error::Invariant("cell path is singular".into()))?;
        let v1n = v1.apply(&binv, f);
        let i1 = *qd
            .idx1
            .get(&v1n)
            .ok_or_else(|| Error::Invariant("first component is not a point of G/P1".into()))?;
        let fid = qd.cells[ci].fiber_of[i1 as usize];
        Ok(qd.orbit_lookup[&(ci, fid)])
    }

    /// Push an orbit through a minimal parabolic P_alpha (alpha simple): the
    /// q+1 candidates {x} u {s_alpha x_alpha(t) x} cover P_alpha x, and the
    /// multiset of their orbits determines the edge type.  The type is also
    /// derived independently from the fitted dimensions and ranks, and the
    /// two answers (over every field) must agree.
    ///
    /// Only simple roots are admitted: for a non-simple gamma the set
    /// B<U_gamma, U_-gamma> is not a group, the candidate orbits do not
    /// follow the three-case pattern, and dimensions can jump by more than
    /// one in a single step.
    pub fn classify_edge(&self, orbit: usize, gamma: &Root) -> Result<EngineEdge, Error> {
        if gamma.iter().map(|&c| c.abs()).sum::<i64>() != 1 {
            return Err(Error::Invariant(format!(
                "edge classification needs a simple root, got {gamma:?}"
            )));
        }
        let neg_err = |m: String| Error::CrossCheck(m);
        let mut result: Option<EngineEdge> = None;
        for (qi, qd) in self.qdata.iter().enumerate() {
            let f = qd.f;
            let q = self.qs[qi];
            let (v1, v2) = self.orbit_rep(qi, orbit);
            let s = reflection_lift(self.sys, f, gamma)?;
            let mut hits: HashMap<usize, u32> = HashMap::new();
            *hits.entry(orbit).or_insert(0) += 1; // the identity coset
            for t in 0..q {
                let g = s.mul(&root_matrix(self.sys, f, gamma, t)?, f);
                let o = self.orbit_of_point(qi, &v1.apply(&g, f), &v2.apply(&g, f))?;
                *hits.entry(o).or_insert(0) += 1;
            }
            let this = self.classify_from_hits(orbit, q, &hits)?;
            if result.as_ref().is_some_and(|r| *r != this) {
                return Err(neg_err(format!(
                    "edge classification differs between fields at orbit {orbit}, root {gamma:?}"
                )));
            }
            result = Some(this);
        }
        Ok(result.unwrap())
    }

    fn classify_from_hits(
        &self,
        orbit: usize,
        q: u32,
        hits: &HashMap<usize, u32>,
    ) -> Result<EngineEdge, Error> {
        let dim = self.orbits[orbit].dim;
        let rank = self.orbits[orbit].rank;
        let target = *hits
            .keys()
            .max_by_key(|&&o| self.orbits[o].dim)
            .unwrap();
        if target == orbit {
            return Ok(EngineEdge::NotRaised);
        }
        let fail = |m: &str| {
            Err(Error::CrossCheck(format!(
                "orbit {orbit} at q={q}: {m} (hits {hits:?})"
            )))
        };
        if self.orbits[target].dim != dim + 1 {
            return fail("densest candidate orbit is not one dimension up");
        }
        let m_self = *hits.get(&orbit).unwrap_or(&0);
        let m_target = hits[&target];
        // route 1: orbit count plus fitted (dim, rank) deltas
        let drank = self.orbits[target].rank as i64 - rank as i64;
        let type1 = match (hits.len(), drank) {
            (2, 0) => EdgeType::U,
            (2, 1) => EdgeType::N,
            (3, 1) => EdgeType::T,
            _ => return fail("no edge type matches the orbit count and rank delta"),
        };
        // route 2: multiplicities of the q+1 rank-one coset candidates
        let type2 = if hits.len() == 2 && m_self == 1 && m_target == q {
            EdgeType::U
        } else if hits.len() == 2 && m_self == 2 && m_target == q - 1 {
            EdgeType::N
        } else if hits.len() == 3 && m_self == 1 && m_target == q - 1 {
            EdgeType::T
        } else {
            return fail("candidate multiplicities match no edge type");
        };
        if type1 != type2 {
            return fail("multiplicity pattern and rank delta disagree");
        }
        Ok(EngineEdge::Raised {
            target,
            etype: type1,
        })
    }

    /// Total number of points of X = G/P1 x G/P2 over qs[qi].
    pub fn total_points(&self, qi: usize) -> u128 {
        self.qdata[qi].flags1.len() as u128 * self.qdata[qi].n_flags2 as u128
    }
}

/// Weight of the line F e_i (re-exported convenience for tests).
pub fn line_weight(sys: &RootSystem, i: usize) -> Weight {
    basis_weight(sys, i)
}
