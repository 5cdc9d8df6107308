//! Command line front end: root system data, distances, cascades, shadow
//! graph emission, finite-field orbit enumeration and the cross-checks
//! between them.
//!
//! Every option can also be given in a manifest file of `key=value` lines
//! (`--manifest`); explicit flags win over the file.  Exit codes: 0 all
//! checks pass, 1 verification failure, 2 usage or configuration error,
//! 3 budget refusal.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flagorbit::error::Error;
use flagorbit::metric::{self, WeightPair};
use flagorbit::orbitlab::counterexample;
use flagorbit::orbitlab::crosscheck::crosscheck;
use flagorbit::orbitlab::engine::{Engine, EngineEdge};
use flagorbit::parabolics::{self, ParabolicDatum};
use flagorbit::report::{word_string, GraphReport};
use flagorbit::roots::{format_weight, RootSystem};
use flagorbit::shadow::ShadowContext;
use flagorbit::weyl::{self, CosetRep};

const DEFAULT_BUDGET: u128 = 1 << 28;

#[derive(Parser)]
#[command(name = "flagorbit", version, about = "Borel orbits on products of two flag varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print root system and flag variety data for a Cartan type
    Rootsys(Opts),
    /// Distance table on a pair of minuscule weight orbits
    Distance(Opts),
    /// Cascade of orthogonal roots and the dense orbit rank of an opposite pair
    Cascade(Opts),
    /// Emit the shadow graphs of all (or selected) G-orbits as JSON/DOT
    Shadow(Opts),
    /// Enumerate B(F_q)-orbits and write the orbit report
    Orbitlab(Opts),
    /// Cross-check the shadow predictions against the finite-field engine
    Verify(Opts),
    /// Reproduce the Sp6 configuration with its N edge
    Counterexample(Opts),
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// Manifest file with key=value lines; explicit flags win
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Cartan type, e.g. A3 or D4
    #[arg(long = "type")]
    ctype: Option<String>,
    /// Marked node of the first parabolic (0-based)
    #[arg(long)]
    p1: Option<usize>,
    /// Marked node of the second parabolic (0-based)
    #[arg(long)]
    p2: Option<usize>,
    /// Comma-separated prime field sizes
    #[arg(long, value_delimiter = ',')]
    q: Vec<u32>,
    /// Work budget for the orbit engine
    #[arg(long)]
    budget: Option<u128>,
    /// Double coset selector: all | dense | <index>
    #[arg(long)]
    coset: Option<String>,
    /// Weight pair "<sel>,<sel>" with sel = dominant | lowest | <index>
    #[arg(long)]
    pair: Option<String>,
    /// Output path prefix for emitted files
    #[arg(long)]
    out: Option<PathBuf>,
    /// Formats to emit: json, dot
    #[arg(long, value_delimiter = ',')]
    emit: Vec<String>,
}

enum Failure {
    /// Verification failed: a check came out false.
    Verify(String),
    /// Bad flags, manifest, or domain input.
    Usage(String),
    /// The engine refused to start within the budget.
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::CrossCheck(_) | Error::Invariant(_) | Error::NoPolynomialFit(_)
            | Error::OrbitMatching(_) | Error::RankCollision(..) => {
                Failure::Verify(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, run): (&Opts, fn(&Opts) -> Result<(), Failure>) = match &cli.cmd {
        Cmd::Rootsys(o) => (o, cmd_rootsys),
        Cmd::Distance(o) => (o, cmd_distance),
        Cmd::Cascade(o) => (o, cmd_cascade),
        Cmd::Shadow(o) => (o, cmd_shadow),
        Cmd::Orbitlab(o) => (o, cmd_orbitlab),
        Cmd::Verify(o) => (o, cmd_verify),
        Cmd::Counterexample(o) => (o, cmd_counterexample),
    };
    let opts = match merge_manifest(opts) {
        Ok(o) => o,
        Err(m) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    match run(&opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget refused: {m}");
            ExitCode::from(3)
        }
    }
}

// ---------------------------------------------------------------------------
// Manifest handling
// ---------------------------------------------------------------------------

fn merge_manifest(opts: &Opts) -> Result<Opts, String> {
    let mut merged = opts.clone();
    let Some(path) = &opts.manifest else {
        return Ok(merged);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read manifest {}: {e}", path.display()))?;
    let mut kv: HashMap<&str, &str> = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("manifest line {}: expected key=value", ln + 1))?;
        kv.insert(k.trim(), v.trim());
    }
    let parse = |v: &str, k: &str| -> Result<usize, String> {
        v.parse().map_err(|_| format!("manifest key {k}: bad number {v:?}"))
    };
    for (k, v) in kv {
        match k {
            "type" => {
                merged.ctype.get_or_insert_with(|| v.to_string());
            }
            "p1" => {
                merged.p1.get_or_insert(parse(v, k)?);
            }
            "p2" => {
                merged.p2.get_or_insert(parse(v, k)?);
            }
            "q" => {
                if merged.q.is_empty() {
                    merged.q = v
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|_| format!("bad q list {v:?}")))
                        .collect::<Result<_, _>>()?;
                }
            }
            "budget" => {
                merged
                    .budget
                    .get_or_insert(v.parse().map_err(|_| format!("bad budget {v:?}"))?);
            }
            "coset" => {
                merged.coset.get_or_insert_with(|| v.to_string());
            }
            "pair" => {
                merged.pair.get_or_insert_with(|| v.to_string());
            }
            "out" => {
                merged.out.get_or_insert_with(|| PathBuf::from(v));
            }
            "emit" => {
                if merged.emit.is_empty() {
                    merged.emit = v.split(',').map(|s| s.trim().to_string()).collect();
                }
            }
            other => return Err(format!("unknown manifest key {other:?}")),
        }
    }
    Ok(merged)
}

// ---------------------------------------------------------------------------
// Shared option decoding
// ---------------------------------------------------------------------------

fn system(opts: &Opts) -> Result<RootSystem, Failure> {
    let t = opts
        .ctype
        .as_deref()
        .ok_or_else(|| Failure::Usage("--type is required".into()))?;
    let ctype = t
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(RootSystem::new(ctype))
}

fn parabolic_pair(
    sys: &RootSystem,
    opts: &Opts,
) -> Result<(ParabolicDatum, ParabolicDatum), Failure> {
    let n1 = opts.p1.ok_or_else(|| Failure::Usage("--p1 is required".into()))?;
    let n2 = opts.p2.ok_or_else(|| Failure::Usage("--p2 is required".into()))?;
    let p1 = ParabolicDatum::new(sys, n1).map_err(|e| Failure::Usage(e.to_string()))?;
    let p2 = ParabolicDatum::new(sys, n2).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((p1, p2))
}

fn q_list(opts: &Opts) -> Result<Vec<u32>, Failure> {
    if opts.q.is_empty() {
        return Err(Failure::Usage("--q is required (e.g. --q 2,3)".into()));
    }
    Ok(opts.q.clone())
}

fn budget(opts: &Opts) -> u128 {
    opts.budget.unwrap_or(DEFAULT_BUDGET)
}

/// Indices of the selected double cosets, in canonical order.
fn select_cosets(n: usize, opts: &Opts) -> Result<Vec<usize>, Failure> {
    match opts.coset.as_deref().unwrap_or("all") {
        "all" => Ok((0..n).collect()),
        "dense" => Ok(vec![n - 1]),
        s => {
            let i: usize = s
                .parse()
                .map_err(|_| Failure::Usage(format!("bad coset selector {s:?}")))?;
            if i >= n {
                return Err(Failure::Usage(format!(
                    "coset index {i} out of range (there are {n} double cosets)"
                )));
            }
            Ok(vec![i])
        }
    }
}

fn select_weight(reps: &[CosetRep], sel: &str) -> Result<usize, Failure> {
    match sel {
        // reps are sorted by (length, word): dominant first, lowest last
        "dominant" => Ok(0),
        "lowest" => Ok(reps.len() - 1),
        s => {
            let i: usize = s
                .parse()
                .map_err(|_| Failure::Usage(format!("bad weight selector {s:?}")))?;
            if i >= reps.len() {
                return Err(Failure::Usage(format!(
                    "weight index {i} out of range (orbit has {} weights)",
                    reps.len()
                )));
            }
            Ok(i)
        }
    }
}

fn emit_formats(opts: &Opts) -> Result<(bool, bool), Failure> {
    if opts.emit.is_empty() {
        return Ok((true, true));
    }
    let (mut json, mut dot) = (false, false);
    for e in &opts.emit {
        match e.as_str() {
            "json" => json = true,
            "dot" => dot = true,
            other => return Err(Failure::Usage(format!("unknown emit format {other:?}"))),
        }
    }
    Ok((json, dot))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_rootsys(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    println!("type {}", sys.ctype);
    println!("rank {}", sys.rank());
    println!("positive roots {}", sys.positive_roots.len());
    println!("simply laced {}", sys.is_simply_laced());
    if let Ok(theta) = sys.highest_root() {
        println!("highest root {theta:?}");
    }
    for i in 0..sys.rank() {
        let p = ParabolicDatum::new(&sys, i).map_err(|e| Failure::Usage(e.to_string()))?;
        let reps = weyl::min_coset_reps(&sys, i)?;
        println!(
            "node {i}: cominuscule {}, |W^P| {}, dim G/P {}",
            p.is_cominuscule(&sys),
            reps.len(),
            p.flag_dimension(&sys)
        );
    }
    Ok(())
}

fn cmd_distance(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    let (p1, p2) = parabolic_pair(&sys, opts)?;
    let reps1 = weyl::min_coset_reps(&sys, p1.node)?;
    let reps2 = weyl::min_coset_reps(&sys, p2.node)?;
    let pairs: Vec<(usize, usize)> = match opts.pair.as_deref() {
        Some(p) => {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| Failure::Usage("--pair wants \"<sel>,<sel>\"".into()))?;
            vec![(select_weight(&reps1, a.trim())?, select_weight(&reps2, b.trim())?)]
        }
        None => (0..reps1.len())
            .flat_map(|i| (0..reps2.len()).map(move |j| (i, j)))
            .collect(),
    };
    let mut bad = 0usize;
    for (i, j) in pairs {
        let pair = WeightPair::new(
            &sys,
            p1,
            p2,
            reps1[i].weight.clone(),
            reps2[j].weight.clone(),
        )?;
        let d = metric::distance(&sys, &pair)?;
        let greedy = metric::greedy_sequence(&sys, &pair)?.len();
        let oracle = metric::max_orthogonal_sequence(&sys, &pair).len();
        let ok = d == greedy && d == oracle;
        if !ok {
            bad += 1;
        }
        println!(
            "lambda1 {} lambda2 {} d {d} greedy {greedy} oracle {oracle}{}",
            format_weight(&reps1[i].weight),
            format_weight(&reps2[j].weight),
            if ok { "" } else { "  MISMATCH" }
        );
    }
    if bad > 0 {
        return Err(Failure::Verify(format!("{bad} distance mismatches")));
    }
    Ok(())
}

fn cmd_cascade(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    let (p1, p2) = parabolic_pair(&sys, opts)?;
    let w0 = weyl::longest_element(&sys);
    let datum = parabolics::induction_datum(&sys, &p1, &p2, &w0)?;
    let cas = match datum.q2_node {
        None => metric::cascade(&sys, &[], |_| false),
        Some(q2) => metric::cascade(&sys, &datum.levi_positive_roots(&sys), |r| r[q2] == 1),
    };
    for (i, level) in cas.levels.iter().enumerate() {
        println!(
            "level {i}: theta {:?}, {} roots, counted {}",
            level.theta,
            level.positive.len(),
            level.nontrivial
        );
    }
    cas.verify_difference_identity(&sys)?;
    println!("difference identity holds at every level");
    let s = metric::dense_orbit_rank(&sys, &p1, &p2)?;
    if s != cas.rank() {
        return Err(Failure::Verify(format!(
            "cascade rank {} != dense orbit rank {s}",
            cas.rank()
        )));
    }
    println!("dense orbit rank {s}");
    Ok(())
}

fn cmd_shadow(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    let (p1, p2) = parabolic_pair(&sys, opts)?;
    let ctx = ShadowContext::new(&sys, p1, p2)?;
    let cosets = parabolics::double_cosets(&sys, &p1, &p2);
    let selected = select_cosets(cosets.len(), opts)?;
    let graphs = selected
        .iter()
        .map(|&i| ctx.graph(&cosets[i]))
        .collect::<Result<Vec<_>, _>>()?;
    for g in &graphs {
        println!(
            "G-orbit w = {}: rank {}, {} nodes, {} edges",
            word_string(&g.w),
            g.rk,
            g.nodes.len(),
            g.edges.len()
        );
    }
    let report = GraphReport::new(
        &sys.ctype.to_string(),
        p1.node,
        p2.node,
        &graphs,
    );
    let (json, dot) = emit_formats(opts)?;
    let out = opts.out.clone().unwrap_or_else(|| PathBuf::from("shadow"));
    if json {
        write_file(&out.with_extension("json"), &report.to_json())?;
    }
    if dot {
        write_file(&out.with_extension("dot"), &report.to_dot())?;
    }
    Ok(())
}

fn cmd_orbitlab(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    let (p1, p2) = parabolic_pair(&sys, opts)?;
    let qs = q_list(opts)?;
    let engine = Engine::new(&sys, &p1, &p2, &qs, budget(opts))?;
    println!(
        "{} G-orbits, {} B-orbits at q {:?}",
        engine.cosets.len(),
        engine.orbits.len(),
        qs
    );
    let word_of = |reps: &[CosetRep], w: &flagorbit::roots::Weight| {
        reps.iter()
            .find(|r| &r.weight == w)
            .map(|r| word_string(&r.w))
            .expect("orbit cell is a coset representative")
    };
    let mut orbits = Vec::new();
    let mut edges = Vec::new();
    for (oi, o) in engine.orbits.iter().enumerate() {
        let (v1, v2) = engine.orbit_rep(0, oi);
        let rep = serde_json::json!({"q": qs[0], "v1": v1.rows, "v2": v2.rows});
        orbits.push(serde_json::json!({
            "id": oi,
            "gorbit": o.gorbit,
            "u_word": word_of(engine.reps1(), &o.u_weight),
            "v_word": word_of(engine.reps2(), &o.v_weight),
            "dim": o.dim,
            "rank": o.rank,
            "forms": o.forms,
            "counts": o.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rep": rep,
        }));
        for i in 0..sys.rank() {
            if let EngineEdge::Raised { target, etype } =
                engine.classify_edge(oi, &sys.simple_root(i))?
            {
                edges.push(serde_json::json!({
                    "src": oi,
                    "dst": target,
                    "gamma": sys.simple_root(i),
                    "type": etype,
                }));
            }
        }
    }
    let n_edges = edges.iter().filter(|e| e["type"] == "N").count();
    println!("{} weak-order edges, {} of type N", edges.len(), n_edges);
    let doc = serde_json::json!({
        "schema": "flagorbit.orbits/1",
        "ctype": sys.ctype.to_string(),
        "p1": p1.node,
        "p2": p2.node,
        "q": qs,
        "cosets": engine.cosets.iter().map(word_string).collect::<Vec<_>>(),
        "orbits": orbits,
        "edges": edges,
    });
    let out = opts.out.clone().unwrap_or_else(|| PathBuf::from("orbits"));
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    write_file(&out.with_extension("json"), &text)
}

fn cmd_verify(opts: &Opts) -> Result<(), Failure> {
    let sys = system(opts)?;
    let (p1, p2) = parabolic_pair(&sys, opts)?;
    let qs = q_list(opts)?;
    let c = crosscheck(&sys, &p1, &p2, &qs, budget(opts))?;
    if c.shadow_mode {
        println!(
            "shadow crosscheck: {} G-orbits, {} B-orbits, {} shadow nodes, \
             {} label collisions, {} minimal orbits",
            c.gorbits, c.orbits, c.shadow_nodes, c.phi_collisions, c.minimal_orbits
        );
        println!(
            "{} weak-order edges (all U or T), {} shadow edges reproduced",
            c.edges_checked, c.shadow_edges_checked
        );
    } else {
        println!(
            "engine-only check: {} G-orbits, {} B-orbits, {} weak-order edges, \
             {} of type N",
            c.gorbits, c.orbits, c.edges_checked, c.n_edges
        );
        if c.n_edges > 0 {
            println!("N edges are expected outside the simply-laced cominuscule range");
        }
    }
    println!("verify: pass");
    Ok(())
}

fn cmd_counterexample(opts: &Opts) -> Result<(), Failure> {
    let qs = if opts.q.is_empty() { vec![3, 5] } else { opts.q.clone() };
    let report = counterexample::run(&qs, budget(opts))?;
    let names = ["x0", "x1", "x2", "x"];
    println!("Sp6, pairs of Lagrangian 3-spaces, q {qs:?}");
    let mut dims = String::new();
    for (i, name) in names.iter().enumerate() {
        let _ = write!(
            dims,
            "{}{name}: dim {} rank {} classes {}",
            if i == 0 { "" } else { ", " },
            report.dims[i],
            report.ranks[i],
            report.forms[i]
        );
    }
    println!("{dims}");
    for e in &report.edges {
        println!(
            "edge {} -> {} along alpha{}: type {:?}",
            names[e.src], names[e.dst], e.simple, e.etype
        );
    }
    for q in [7u32, 17] {
        counterexample::verify_matrix_identities(q)?;
        println!("matrix identities hold at q = {q}");
    }
    println!("counterexample: pass");
    Ok(())
}
