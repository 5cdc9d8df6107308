use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("root system is not irreducible")]
    NotIrreducible,

    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("parabolic at node {node} of {ctype} is not cominuscule")]
    NotCominuscule { ctype: String, node: usize },

    #[error("root system {ctype} is not simply laced")]
    NotSimplyLaced { ctype: String },

    #[error("weight {0} is not in the required W-orbit")]
    WeightNotInOrbit(String),

    #[error("parabolics do not form an opposite pair")]
    NotOppositePair,

    #[error("element is not a minimal coset representative")]
    NotMinimalRep,

    #[error("dual representative certificate failed: {0}")]
    DualRepCheck(String),

    #[error("dominance certificate failed for chi_R = {0:?}")]
    ChiRNotDominant(Vec<i64>),

    #[error("unipotent triviality check failed at root {root:?} (P1 not cominuscule?)")]
    PropTrivViolation { root: Vec<i64> },

    #[error("distance is not an integer: {0}")]
    NonIntegralDistance(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("shadow rank collision: node ({0}) reached with ranks {1} and {2}")]
    RankCollision(String, usize, usize),

    #[error("unsupported group for the orbit engine: {0}")]
    UnsupportedGroup(String),

    #[error("{q} is not an odd prime power this engine accepts (primes only)")]
    BadFieldSize { q: u32 },

    #[error("refusing to enumerate: working set ~{estimate} points exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("orbit matching across fields failed: {0}")]
    OrbitMatching(String),

    #[error("no (dim, rank) pair fits orbit counts {0:?}")]
    NoPolynomialFit(Vec<(u32, u128)>),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("cache format: {0}")]
    CacheFormat(String),
}
