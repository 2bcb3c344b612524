//! `E[sin²(X)]` for standard normal `X`, whose exact value is `sinh(1)/e`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::AppRun;
use crate::dist::{discretize_normal, DiscretizedDistribution};
use crate::engine::{run_qmc, QmcConfig, RandomVariableSpec};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleProblem {
    pub m: usize,
    /// Grid is `[−x_max, x_max]`.
    pub x_max: f64,
}

impl Default for SimpleProblem {
    fn default() -> Self {
        SimpleProblem { m: 5, x_max: PI }
    }
}

impl SimpleProblem {
    pub fn new(m: usize) -> Self {
        SimpleProblem { m, ..Self::default() }
    }

    pub fn distribution(&self) -> Result<DiscretizedDistribution> {
        discretize_normal(self.m, 0.0, 1.0, -self.x_max, self.x_max)
    }

    /// `sin²(x_i)` already lies in `[0, 1]` and is encoded without rescaling.
    pub fn random_variable(&self) -> Result<RandomVariableSpec> {
        RandomVariableSpec::unit(self.distribution()?.grid().iter().map(|x| x.sin().powi(2)).collect())
    }

    pub fn grid_mean(&self) -> Result<f64> {
        Ok(self.distribution()?.expect(|x| x.sin().powi(2)))
    }

    pub fn exact_mean() -> f64 {
        1f64.sinh() / 1f64.exp()
    }
}

pub fn simple_qmc(problem: &SimpleProblem, config: &QmcConfig) -> Result<AppRun> {
    config.check_register_budget(&[problem.m])?;
    let estimate = run_qmc(config, &[problem.distribution()?], &problem.random_variable()?)?;
    AppRun::new(estimate, problem.grid_mean()?, SimpleProblem::exact_mean())
}
