//! Economics applications with their analytic and grid oracles, and the
//! classical Monte Carlo baseline.

mod classical;
mod neoclassical;
mod simple;
mod stress;

use serde::{Deserialize, Serialize};

pub use classical::{classical_mc, ClassicalProblem, MCRun};
pub use neoclassical::{
    neoclassical_closed_form, neoclassical_coeffs, neoclassical_loss, neoclassical_qmc, NeoclassicalParams,
    NeoclassicalProblem,
};
pub use simple::{simple_qmc, SimpleProblem};
pub use stress::{
    stress_coefficients, stress_loss_rv, stress_qmc, BankBalanceSheet, BetaShape, StressCoefficients, StressModel,
    StressTestParams,
};

use crate::engine::PhaseEstimate;
use crate::error::Result;

/// A QMC run of an application together with its oracles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppRun {
    pub estimate: PhaseEstimate,
    /// Exact expectation on the discretised grid.
    pub oracle: f64,
    /// Expectation under the continuous distribution.
    pub reference: f64,
    /// `|μ̂ − oracle|`.
    pub abs_error: f64,
    /// `|μ̂ − reference|`.
    pub reference_error: f64,
    /// `|μ̂ − reference| / |reference|`.
    pub fractional_error: f64,
}

impl AppRun {
    pub fn new(estimate: PhaseEstimate, oracle: f64, reference: f64) -> Result<Self> {
        let mu = estimate.mu;
        let reference_error = (mu - reference).abs();
        Ok(AppRun {
            estimate,
            oracle,
            reference,
            abs_error: (mu - oracle).abs(),
            reference_error,
            fractional_error: if reference != 0.0 { reference_error / reference.abs() } else { f64::NAN },
        })
    }
}
