//! Loading the random variable onto the ancilla, and the combined `F = R(A ⊗ 1)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::RandomVariableSpec;
use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Result};
use crate::sim::StateVector;

/// Exact encoding: a uniformly controlled RY on `ancilla` with angle
/// `2 asin √f(i)` for register value `i`, so `P(ancilla = 1 | i) = f(i)`.
pub fn build_r_exact(rv: &RandomVariableSpec, register: &[usize], ancilla: usize, width: usize) -> Result<Circuit> {
    if rv.len() != 1usize.checked_shl(register.len() as u32).unwrap_or(0) {
        return invalid(format!("random variable has {} values for a {}-qubit register", rv.len(), register.len()));
    }
    let angles = rv.values().iter().map(|v| 2.0 * v.sqrt().asin()).collect();
    Circuit::from_gates(width, vec![Gate::ucry(register.to_vec(), ancilla, angles)])
}

/// Parameters of the linear encoding `P(1 | i) = sin²(π/4 + a i + b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearRParams {
    pub m: usize,
    pub c_s: f64,
    pub a: f64,
    pub b: f64,
}

impl LinearRParams {
    /// Maps index `0..2^m − 1` onto `[−c_s, c_s]`.
    pub fn new(m: usize, c_s: f64) -> Result<Self> {
        if m == 0 || m > 30 {
            return invalid(format!("linear encoding needs 1..=30 register qubits, got {m}"));
        }
        if !(c_s.is_finite() && c_s > 0.0) {
            return invalid(format!("c_s must be positive, got {c_s}"));
        }
        Ok(LinearRParams { m, c_s, a: 2.0 * c_s / ((1usize << m) - 1) as f64, b: -c_s })
    }

    /// `c_s = (3π / N)^{1/3}` with `N = 2^n` oracle applications.
    pub fn for_estimation_qubits(m: usize, n: usize) -> Result<Self> {
        Self::new(m, cs_for_oracle_calls(f64::powi(2.0, n as i32)))
    }

    /// Inverse of the small-angle map: from an estimate of `P(ancilla = 1)` to
    /// the mean of `t = i / (2^m − 1)`, using `sin²(π/4 + y) ≈ 1/2 + y`.
    pub fn t_mean_from_p1(&self, p1: f64) -> f64 {
        let index_mean = (p1 - 0.5 - self.b) / self.a;
        index_mean / ((1usize << self.m) - 1) as f64
    }
}

/// `(3π / N)^{1/3}`.
pub fn cs_for_oracle_calls(n_calls: f64) -> f64 {
    (3.0 * PI / n_calls).cbrt()
}

/// Linear encoding: RY(π/2), RY(2b) on the ancilla, then a CRY of angle
/// `2^{m−k} a` from register qubit `k` (qubit 0 is the most significant).
pub fn build_r_linear(params: &LinearRParams, register: &[usize], ancilla: usize, width: usize) -> Result<Circuit> {
    if register.len() != params.m {
        return invalid(format!("linear encoding for m = {} on {} register qubits", params.m, register.len()));
    }
    let mut c = Circuit::new(width);
    c.push(Gate::Ry { target: ancilla, angle: FRAC_PI_2 })?;
    c.push(Gate::Ry { target: ancilla, angle: 2.0 * params.b })?;
    for (k, &q) in register.iter().enumerate() {
        let weight = f64::powi(2.0, (params.m - k) as i32);
        c.push(Gate::Cry { control: q, target: ancilla, angle: weight * params.a })?;
    }
    Ok(c)
}

/// `F = R (A ⊗ 1)`: the loader followed by the encoding, on the register
/// plus one ancilla (the last qubit).
pub fn build_f(a_circuit: &Circuit, r_circuit: &Circuit) -> Result<Circuit> {
    let width = a_circuit.num_qubits() + 1;
    if r_circuit.num_qubits() != width {
        return invalid(format!(
            "loader acts on {} qubits but the encoding on {}, expected {width}",
            a_circuit.num_qubits(),
            r_circuit.num_qubits()
        ));
    }
    let mut f = a_circuit.remap(&(0..a_circuit.num_qubits()).collect::<Vec<_>>(), width)?;
    f.append(r_circuit)?;
    Ok(f)
}

/// Places circuits side by side on consecutive qubit blocks.
pub fn tensor(circuits: &[Circuit]) -> Result<Circuit> {
    let width = circuits.iter().map(Circuit::num_qubits).sum();
    let mut out = Circuit::new(width);
    let mut offset = 0;
    for c in circuits {
        let map: Vec<usize> = (offset..offset + c.num_qubits()).collect();
        out.append(&c.remap(&map, width)?)?;
        offset += c.num_qubits();
    }
    Ok(out)
}

/// `P(ancilla = 1)` after running `f` on `|0…0⟩`; the ancilla is the last qubit.
pub fn encoded_p1(f: &Circuit) -> Result<f64> {
    let mut s = StateVector::new(f.num_qubits())?;
    s.apply_circuit(f)?;
    Ok(s.probabilities(&[f.num_qubits() - 1])?[1])
}
