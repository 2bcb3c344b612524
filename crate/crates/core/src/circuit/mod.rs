//! Gate and circuit types, inverse QFT, multi-controlled X, decomposition to
//! {RX, RY, RZ, CNOT} and resource counting.

#[allow(clippy::module_inception)]
mod circuit;
mod decompose;
mod gate;
pub mod mcx;
mod qft;
mod resources;

pub use circuit::Circuit;
pub use decompose::{decompose, Decomposer};
pub use gate::{Gate, GateKind};
pub use mcx::{mcx, mcx_circuit, McxExpansion};
pub use qft::{inverse_qft, InverseQft};
pub use resources::{count_resources, ResourceCounter, ResourceReport};
