//! Scenario file: the model calibrations used by every subcommand.
//!
//! ```toml
//! # Grid qubits per stress-test period.
//! stress_m = 5
//! # Register budget `Σm + 1 + n` for a single run.
//! max_qubits = 30
//!
//! [stress]
//! price_sensitivity = 5e-5
//! leverage_ratio = 0.03
//! benchmark_mortgage_loss = 0.005
//! benchmark_business_loss = 0.010
//! credit_loss_rate = { a = 2.0, b = 10.0 }
//!
//! [[stress.banks]]
//! name = "bank1"
//! mortgages = 50.0
//! business_loans = 50.0
//! securities = 50.0
//! total_assets = 150.0
//! equity = 4.5
//!
//! [[stress.banks]]
//! name = "bank2"
//! mortgages = 30.0
//! business_loans = 70.0
//! securities = 50.0
//! total_assets = 150.0
//! equity = 4.5
//!
//! [neoclassical]
//! c1 = 30.0
//! c2 = -29.0
//! mean = 1.0
//! sigma = 0.02
//! x_min = 0.94
//! x_max = 1.06
//! m = 5
//!
//! [simple]
//! m = 5
//! x_max = 3.141592653589793
//!
//! [training]
//! layers = 10
//! epochs_per_stage = 1000
//! learning_rates = [0.01, 0.001, 0.0001]
//! ```
//!
//! Every section is optional and falls back to the built-in reference values.

use std::path::Path;

use qmc_core::sim::DEFAULT_MAX_QUBITS;
use qmc_core::econ::{NeoclassicalProblem, SimpleProblem, StressTestParams};
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub stress: StressTestParams,
    /// Stress-test grid qubits per period.
    pub stress_m: usize,
    pub max_qubits: usize,
    pub simple: SimpleProblem,
    /// Instance for single runs, oracles and loader training.
    pub neoclassical: NeoclassicalProblem,
    /// Instance for error-scaling sweeps.
    pub neoclassical_scaling: NeoclassicalProblem,
    pub training: TrainingConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainingConfig {
    pub layers: usize,
    pub epochs_per_stage: usize,
    pub learning_rates: Vec<f64>,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        TrainingConfig { layers: 10, epochs_per_stage: 1000, learning_rates: vec![0.01, 0.001, 0.0001] }
    }
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            stress: StressTestParams::reference(),
            stress_m: 5,
            max_qubits: DEFAULT_MAX_QUBITS,
            simple: SimpleProblem::default(),
            neoclassical: NeoclassicalProblem::benchmark(),
            neoclassical_scaling: NeoclassicalProblem::scaling_benchmark(),
            training: TrainingConfig::default(),
        }
    }
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serialises")
    }
}
