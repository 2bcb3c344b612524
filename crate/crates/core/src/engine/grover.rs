//! The Grover-type operator `Q = (F Z F† V)²` and its controlled form.
//!
//! `V = 1 ⊗ σ_z` marks the ancilla, `Z = 1 − 2|0⟩⟨0|` reflects about the all-zero
//! state of the F register. On the plane spanned by `F|0⟩` the operator is a
//! rotation with eigenvalues `e^{±2πiθ}`, `cos(πθ) = 1 − 2μ`.
//!
//! The controlled form never controls F itself: with the control off, every F
//! is followed by its inverse and they cancel, so only V and Z need the control.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Result};

/// Qubit assignment of a phase-estimation circuit: the F register (data qubits
/// then the ancilla), the estimation register, then optional work qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmcLayout {
    pub data: Vec<usize>,
    pub ancilla: usize,
    pub estimation: Vec<usize>,
    pub work: Vec<usize>,
}

impl QmcLayout {
    /// `data_qubits` data qubits, `n` estimation qubits and, if `with_work`,
    /// the `max(0, data_qubits − 1)` clean work qubits the controlled
    /// reflection needs for a linear-cost multi-controlled X.
    pub fn new(data_qubits: usize, n: usize, with_work: bool) -> Self {
        let r = data_qubits;
        let work = if with_work { r.saturating_sub(1) } else { 0 };
        QmcLayout {
            data: (0..r).collect(),
            ancilla: r,
            estimation: (r + 1..r + 1 + n).collect(),
            work: (r + 1 + n..r + 1 + n + work).collect(),
        }
    }

    /// F register: data qubits then the ancilla.
    pub fn f_qubits(&self) -> Vec<usize> {
        let mut q = self.data.clone();
        q.push(self.ancilla);
        q
    }

    pub fn num_qubits(&self) -> usize {
        self.data.len() + 1 + self.estimation.len() + self.work.len()
    }
}

fn reflection_about_zero(f_qubits: &[usize], control: Option<usize>, work: &[usize], out: &mut Vec<Gate>) {
    let (&target, others) = f_qubits.split_last().expect("F register is never empty");
    let mut controls = others.to_vec();
    controls.extend(control);
    for &q in f_qubits {
        out.push(Gate::X { target: q });
    }
    out.push(Gate::H { target });
    out.push(Gate::Mcx { controls, target, work: work.to_vec() });
    out.push(Gate::H { target });
    for &q in f_qubits {
        out.push(Gate::X { target: q });
    }
}

fn q_gates(f: &Circuit, f_map: &[usize], control: Option<usize>, work: &[usize], width: usize) -> Result<Vec<Gate>> {
    let fw = f.remap(f_map, width)?;
    let fi = fw.inverse();
    let ancilla = *f_map.last().expect("F register is never empty");
    let mut gates = Vec::with_capacity(4 * f.len() + 8 * f_map.len() + 16);
    for _ in 0..2 {
        match control {
            Some(c) => gates.push(Gate::Cz { control: c, target: ancilla }),
            None => {
                gates.push(Gate::H { target: ancilla });
                gates.push(Gate::X { target: ancilla });
                gates.push(Gate::H { target: ancilla });
            }
        }
        gates.extend(fi.gates().iter().cloned());
        reflection_about_zero(f_map, control, work, &mut gates);
        gates.extend(fw.gates().iter().cloned());
    }
    Ok(gates)
}

/// `Q = (F Z F† V)²` on the qubits of `f` (last qubit is the ancilla).
pub fn build_q(f: &Circuit) -> Result<Circuit> {
    let w = f.num_qubits();
    if w < 2 {
        return invalid("F needs at least one data qubit and the ancilla");
    }
    let map: Vec<usize> = (0..w).collect();
    Circuit::from_gates(w, q_gates(f, &map, None, &[], w)?)
}

/// `|0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ Q` inside a `width`-qubit circuit, with `f` placed on
/// `f_map` (last entry is the ancilla). `work` is lent to the multi-controlled
/// X of the reflection for decomposition; the simulator does not need it.
pub fn build_controlled_q(f: &Circuit, f_map: &[usize], control: usize, work: &[usize], width: usize) -> Result<Circuit> {
    if f_map.len() != f.num_qubits() || f_map.len() < 2 {
        return invalid("F register map does not match the F circuit");
    }
    if f_map.contains(&control) || work.contains(&control) {
        return invalid(format!("control qubit {control} overlaps the F register or work qubits"));
    }
    Circuit::from_gates(width, q_gates(f, f_map, Some(control), work, width)?)
}
