//! Exact combinatorics of B-orbits on products of two flag varieties.
//!
//! Everything on the combinatorial side (root systems, Weyl groups, the
//! distance on minuscule weight orbits, root cascades, shadow graphs) is
//! computed in exact integer / rational arithmetic.  The `orbitlab` module
//! is an independent finite-field engine that enumerates actual B(F_q)-orbits
//! and is used to cross-check the combinatorial predictions.

pub mod error;
pub mod metric;
pub mod orbitlab;
pub mod parabolics;
pub mod report;
pub mod roots;
pub mod shadow;
pub mod weyl;

pub use error::Error;
