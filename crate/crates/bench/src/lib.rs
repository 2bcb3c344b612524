//! Benchmark harness: error sweeps, resource counts, scaling fits and
//! runtime crossovers for the qmc-core estimators.

pub mod config;
pub mod crossover;
pub mod error;
pub mod figures;
pub mod fit;
pub mod output;
pub mod resources;
pub mod sweep;

pub use error::{BenchError, Result};
