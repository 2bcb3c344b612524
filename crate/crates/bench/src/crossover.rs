//! Error-versus-runtime extrapolation for the quantum and classical estimators.
//!
//! Both errors are power laws in their step counts, and both runtimes are
//! proportional to a step count, so `log10 ε` is affine in `log10 T` for each
//! method and the crossover solves two linear equations.
//!
//! Quantum: `n` estimation qubits make `N = 2^n` oracle calls (the `−1` is
//! dropped when extrapolating), and the circuit runs in `T = t · depth(n)`.
//! Classical: `N` samples take `T = τ N / speedup`.

use serde::{Deserialize, Serialize};

use crate::fit::{DepthFit, ScalingFit};

/// `log10 ε = a + b log10 T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorTimeLine {
    pub a: f64,
    pub b: f64,
}

impl ErrorTimeLine {
    pub fn quantum(fit: &ScalingFit, depth: &DepthFit, gate_time: f64) -> Self {
        // log10 T = log10 t + c0 + c1 n and log10 N = n log10 2
        let b = fit.slope * 2f64.log10() / depth.c1;
        ErrorTimeLine { a: fit.intercept - b * (gate_time.log10() + depth.c0), b }
    }

    pub fn classical(fit: &ScalingFit, time_per_sample: f64, speedup: f64) -> Self {
        ErrorTimeLine { a: fit.intercept - fit.slope * (time_per_sample / speedup).log10(), b: fit.slope }
    }

    pub fn error_at(&self, time: f64) -> f64 {
        10f64.powf(self.a + self.b * time.log10())
    }

    pub fn time_for(&self, error: f64) -> f64 {
        10f64.powf((error.log10() - self.a) / self.b)
    }
}

/// Crossover of a quantum and a classical line: `(T, ε)` where they meet,
/// if the quantum line is strictly steeper.
pub fn crossover(quantum: &ErrorTimeLine, classical: &ErrorTimeLine) -> Option<(f64, f64)> {
    let db = quantum.b - classical.b;
    if !(db < 0.0) || db.abs() < 1e-12 {
        return None;
    }
    let lt = (classical.a - quantum.a) / db;
    Some((10f64.powf(lt), 10f64.powf(quantum.a + quantum.b * lt)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub gate_time_s: f64,
    pub speedup_factor: f64,
    pub crossover_time_s: Option<f64>,
    pub crossover_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossoverTable {
    pub rows: Vec<CrossoverRow>,
}

pub fn runtime_extrapolate(
    quantum_fit: &ScalingFit,
    depth_fit: &DepthFit,
    gate_times: &[f64],
    classical_fit: &ScalingFit,
    time_per_sample: f64,
    speedup_factors: &[f64],
) -> CrossoverTable {
    let mut rows = Vec::new();
    for &t in gate_times {
        let q = ErrorTimeLine::quantum(quantum_fit, depth_fit, t);
        for &f in speedup_factors {
            let c = ErrorTimeLine::classical(classical_fit, time_per_sample, f);
            let x = crossover(&q, &c);
            rows.push(CrossoverRow {
                gate_time_s: t,
                speedup_factor: f,
                crossover_time_s: x.map(|p| p.0),
                crossover_error: x.map(|p| p.1),
            });
        }
    }
    CrossoverTable { rows }
}

/// `T_classical / T_quantum` at a target error; above 1 means quantum is faster.
pub fn speedup_at_error(quantum: &ErrorTimeLine, classical: &ErrorTimeLine, error: f64) -> f64 {
    classical.time_for(error) / quantum.time_for(error)
}
