use std::f64::consts::PI;

use super::{Circuit, Gate};
use crate::error::{invalid, Result};

/// Inverse QFT without SWAP gates, plus the qubit order in which its output
/// is read.
#[derive(Clone, Debug)]
pub struct InverseQft {
    pub circuit: Circuit,
    /// Measurement order that turns the output into the integer `y`
    /// (first entry is the most significant bit).
    pub readout: Vec<usize>,
}

/// Inverse QFT on `qubits` inside a `width`-qubit circuit: `n` Hadamards and
/// `n(n-1)/2` controlled phases.
///
/// Without SWAPs the bit reversal moves to the input side: the first listed
/// qubit carries the least significant bit of the input integer, and the
/// output is read with the first listed qubit as the most significant bit.
pub fn inverse_qft(qubits: &[usize], width: usize) -> Result<InverseQft> {
    if qubits.is_empty() {
        return invalid("inverse QFT needs at least one qubit");
    }
    let lanes = qubits.to_vec();
    let n = lanes.len();
    let mut circuit = Circuit::new(width);
    for j in (0..n).rev() {
        for k in (j + 1..n).rev() {
            circuit.push(Gate::ControlledPhase {
                control: lanes[k],
                target: lanes[j],
                angle: -PI / f64::powi(2.0, (k - j) as i32),
            })?;
        }
        circuit.push(Gate::H { target: lanes[j] })?;
    }
    Ok(InverseQft { circuit, readout: lanes })
}
