//! Statevector simulation and the dense-matrix reference path.

pub mod dense;
mod state;

pub use dense::{dense_unitary, phase_aligned_distance, CMatrix, DENSE_MAX_QUBITS};
pub use state::{init_state, StateVector, DEFAULT_MAX_QUBITS};
