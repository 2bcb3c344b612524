//! Phase estimation of `Q` on `F|0⟩` and three ways to obtain its exact
//! outcome distribution.
//!
//! Estimation qubit `k` (counting from the first) controls `Q^(2^k)`,
//! realised as `2^k` consecutive controlled-Q blocks, so the circuit makes
//! `2^n − 1` oracle calls. The inverse QFT has no SWAPs; with this control
//! assignment its output is read directly with the first estimation qubit as
//! the most significant bit, giving `θ = Σ b_i / 2^i`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grover::{build_controlled_q, build_q, QmcLayout};
use crate::circuit::{inverse_qft, Circuit, Gate, InverseQft};
use crate::error::{invalid, QmcError, Result};
use crate::sim::{StateVector, DEFAULT_MAX_QUBITS};

/// The assembled phase-estimation circuit, kept in blocks so that large
/// instances can be streamed gate by gate.
#[derive(Clone, Debug)]
pub struct PhaseEstimationCircuit {
    pub layout: QmcLayout,
    /// `F` on the F register and H on every estimation qubit.
    pub prep: Circuit,
    /// Controlled-Q for each estimation qubit with its repetition count `2^k`.
    pub blocks: Vec<(Circuit, u64)>,
    pub iqft: InverseQft,
}

impl PhaseEstimationCircuit {
    pub fn num_qubits(&self) -> usize {
        self.layout.num_qubits()
    }

    /// Number of controlled-Q applications, `2^n − 1`.
    pub fn oracle_calls(&self) -> u64 {
        self.blocks.iter().map(|(_, r)| r).sum()
    }

    /// Visits every gate in execution order without materialising the full list.
    pub fn try_for_each_gate(&self, mut f: impl FnMut(&Gate) -> Result<()>) -> Result<()> {
        self.prep.iter().try_for_each(&mut f)?;
        for (block, reps) in &self.blocks {
            for _ in 0..*reps {
                block.iter().try_for_each(&mut f)?;
            }
        }
        self.iqft.circuit.iter().try_for_each(&mut f)
    }

    /// The whole circuit as one gate list; refuses more than `max_gates` gates.
    pub fn flatten(&self, max_gates: usize) -> Result<Circuit> {
        let total = self.prep.len() as u64
            + self.blocks.iter().map(|(b, r)| b.len() as u64 * r).sum::<u64>()
            + self.iqft.circuit.len() as u64;
        if total > max_gates as u64 {
            return invalid(format!("flattened circuit would have {total} gates, limit {max_gates}"));
        }
        let mut c = Circuit::new(self.num_qubits());
        self.try_for_each_gate(|g| c.push(g.clone()))?;
        Ok(c)
    }
}

/// Builds the phase-estimation circuit for `f` (data qubits then ancilla) with
/// `n` estimation qubits. `with_work` appends the clean work register used
/// when the circuit is decomposed for resource counting.
pub fn phase_estimation(f: &Circuit, n: usize, with_work: bool) -> Result<PhaseEstimationCircuit> {
    if n == 0 || n > 62 {
        return invalid(format!("estimation qubit count {n} outside 1..=62"));
    }
    if f.num_qubits() < 2 {
        return invalid("F needs at least one data qubit and the ancilla");
    }
    let layout = QmcLayout::new(f.num_qubits() - 1, n, with_work);
    let width = layout.num_qubits();
    let f_map = layout.f_qubits();
    let mut prep = f.remap(&f_map, width)?;
    for &q in &layout.estimation {
        prep.push(Gate::H { target: q })?;
    }
    let blocks = layout
        .estimation
        .iter()
        .enumerate()
        .map(|(k, &c)| Ok((build_controlled_q(f, &f_map, c, &layout.work, width)?, 1u64 << k)))
        .collect::<Result<Vec<_>>>()?;
    let iqft = inverse_qft(&layout.estimation, width)?;
    Ok(PhaseEstimationCircuit { layout, prep, blocks, iqft })
}

/// How the outcome distribution is computed. All give the same distribution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every gate of the assembled circuit, controlled-Q blocks included.
    GateLevel,
    /// `Q^y F|0⟩` for `y = 0 … 2^n − 1` by `2^n − 1` sequential applications of
    /// Q to the F register, placed in the joint state, then the inverse QFT
    /// gates. Equivalent because the estimation register starts in a uniform
    /// superposition of basis states.
    Orbit,
    /// Closed form: `F|0⟩` is an equal-weight superposition of the eigenvectors
    /// with phases `±θ`, so each outcome probability is the average of two
    /// Fejér kernels. Only `P(ancilla = 1)` is simulated.
    Spectral,
    /// `Orbit` up to 24 joint qubits, `Spectral` beyond.
    #[default]
    Auto,
}

const AUTO_ORBIT_MAX_QUBITS: usize = 24;

/// Exact distribution over `y = 0 … 2^n − 1` (`θ = y / 2^n`).
pub fn estimation_distribution(f: &Circuit, n: usize, strategy: Strategy) -> Result<Vec<f64>> {
    let joint = f.num_qubits() + n;
    let strategy = match strategy {
        Strategy::Auto if joint <= AUTO_ORBIT_MAX_QUBITS => Strategy::Orbit,
        Strategy::Auto => Strategy::Spectral,
        s => s,
    };
    match strategy {
        Strategy::GateLevel => gate_level(f, n),
        Strategy::Orbit => orbit(f, n),
        Strategy::Spectral => spectral(f, n),
        Strategy::Auto => unreachable!(),
    }
}

fn cap_check(qubits: usize) -> Result<()> {
    if qubits > DEFAULT_MAX_QUBITS {
        return Err(QmcError::ResourceLimit {
            qubits,
            cap: DEFAULT_MAX_QUBITS,
            bytes: (1u128 << qubits.min(120)) * 16,
        });
    }
    Ok(())
}

fn gate_level(f: &Circuit, n: usize) -> Result<Vec<f64>> {
    cap_check(f.num_qubits() + n)?;
    let pe = phase_estimation(f, n, false)?;
    let mut s = StateVector::new(pe.num_qubits())?;
    s.apply_circuit(&pe.prep)?;
    for (block, reps) in &pe.blocks {
        block.validate()?;
        for _ in 0..*reps {
            s.apply_gates_unchecked(block.gates());
        }
    }
    s.apply_circuit(&pe.iqft.circuit)?;
    s.probabilities(&pe.iqft.readout)
}

fn reverse_bits(x: usize, n: usize) -> usize {
    x.reverse_bits() >> (usize::BITS as usize - n)
}

fn orbit(f: &Circuit, n: usize) -> Result<Vec<f64>> {
    let width = f.num_qubits();
    cap_check(width + n)?;
    let q = build_q(f)?;
    let mut psi = StateVector::new(width)?;
    psi.apply_circuit(f)?;
    let m = 1usize << n;
    let scale = 1.0 / (m as f64).sqrt();
    let mut joint = vec![Complex64::new(0.0, 0.0); m << width];
    for y in 0..m {
        if y > 0 {
            psi.apply_gates_unchecked(q.gates());
        }
        // estimation qubit k carries bit k of y, and qubit 0 of the register is its MSB
        let x = reverse_bits(y, n);
        for (i, a) in psi.amplitudes().iter().enumerate() {
            joint[(i << n) | x] = a * scale;
        }
    }
    let mut s = StateVector::from_amplitudes(joint)?;
    let est: Vec<usize> = (width..width + n).collect();
    let iqft = inverse_qft(&est, width + n)?;
    s.apply_circuit(&iqft.circuit)?;
    s.probabilities(&iqft.readout)
}

/// `|K(d)|² = sin²(πd) / (M² sin²(πd/M))`, the probability of outcome offset `d`
/// from an exact phase when `M = 2^n`.
pub fn fejer(d: f64, m: f64) -> f64 {
    let den = (PI * d / m).sin();
    if den.abs() < 1e-12 {
        // d is a multiple of M
        return 1.0;
    }
    let r = (PI * d).sin() / (m * den);
    r * r
}

/// Outcome distribution of phase estimation on an equal superposition of the
/// eigenvectors with phases `±θ`.
pub fn two_peak_distribution(theta: f64, n: usize) -> Vec<f64> {
    let m = f64::powi(2.0, n as i32);
    let c = m * theta;
    (0..1usize << n).map(|y| 0.5 * fejer(y as f64 - c, m) + 0.5 * fejer(y as f64 + c, m)).collect()
}

/// `θ` with `cos(πθ) = 1 − 2 P₁`, in `[0, 1]`.
pub fn theta_from_p1(p1: f64) -> f64 {
    (1.0 - 2.0 * p1).clamp(-1.0, 1.0).acos() / PI
}

fn spectral(f: &Circuit, n: usize) -> Result<Vec<f64>> {
    let p1 = super::encoded_p1(f)?;
    Ok(two_peak_distribution(theta_from_p1(p1), n))
}
