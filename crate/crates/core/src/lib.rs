//! Quantum Monte Carlo expectation estimation on a statevector simulator.
//!
//! The crate is layered bottom-up:
//!
//! * [`sim`]: dense statevector simulation and a dense-matrix reference path.
//! * [`circuit`]: gates, circuits, inverse QFT, multi-controlled X, elementary
//!   decomposition and resource counting.
//! * [`dist`]: discretised distributions, exact state preparation and the
//!   trainable variational loader.
//! * [`engine`]: random-variable encodings, Grover-type operator, phase
//!   estimation and readout.
//! * [`econ`]: the bank stress test, the neoclassical investment model and
//!   classical Monte Carlo baselines.
//!
//! Qubit 0 is always the most significant bit of a basis-state index.

pub mod circuit;
pub mod dist;
pub mod econ;
pub mod engine;
mod error;
pub mod sim;

pub use error::{QmcError, Result};
