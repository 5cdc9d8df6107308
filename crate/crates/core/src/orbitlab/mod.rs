pub mod counterexample;
pub mod crosscheck;
pub mod engine;
pub mod field;
pub mod flag;
pub mod group;
pub mod mat;
