//! Error-versus-N sweeps for the quantum and classical estimators.

use std::time::Instant;

use clap::ValueEnum;
use qmc_core::econ::{neoclassical_qmc, simple_qmc, stress_qmc, AppRun, ClassicalProblem, StressModel};
use qmc_core::engine::{QmcConfig, RMode, ThetaSide};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Scenario;
use crate::error::{arg_err, BenchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum App {
    Simple,
    Stress,
    Neoclassical,
}

impl App {
    pub fn name(self) -> &'static str {
        match self {
            App::Simple => "simple",
            App::Stress => "stress",
            App::Neoclassical => "neoclassical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    QmcExact,
    QmcLinear,
    Classical,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::QmcExact => "qmc_exact",
            Estimator::QmcLinear => "qmc_linear",
            Estimator::Classical => "classical",
        }
    }

    pub fn r_mode(self) -> Option<RMode> {
        match self {
            Estimator::QmcExact => Some(RMode::Exact),
            Estimator::QmcLinear => Some(RMode::Linear),
            Estimator::Classical => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub app: App,
    pub estimator: Estimator,
    /// Estimation qubits `n` (quantum) or sample counts `N` (classical).
    pub range: Vec<u64>,
    /// Classical runs averaged per point.
    pub repeats: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.range.is_empty() {
            return arg_err("sweep range is empty");
        }
        if self.range.windows(2).any(|w| w[0] >= w[1]) {
            return arg_err("sweep range must be strictly increasing");
        }
        match self.estimator {
            Estimator::Classical => {
                if self.repeats == 0 {
                    return arg_err("classical sweeps need --repeats >= 1");
                }
                if self.range[0] == 0 {
                    return arg_err("sample counts must be >= 1");
                }
            }
            _ => {
                if self.range[0] == 0 || *self.range.last().unwrap() > 62 {
                    return arg_err("estimation qubit counts must lie in 1..=62");
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub app: App,
    pub estimator: Estimator,
    /// Estimation qubits; empty for classical rows.
    pub n: Option<usize>,
    /// Oracle calls `2^n − 1` or samples.
    #[serde(rename = "N")]
    pub big_n: u64,
    pub error: f64,
    pub wall_time_s: f64,
}

/// QMC configuration used for `app` with `n` estimation qubits.
pub fn qmc_config(app: App, r_mode: RMode, n: usize, scenario: &Scenario, sweep: bool) -> QmcConfig {
    let side = match (app, r_mode) {
        (App::Neoclassical, RMode::Linear) => {
            let p = if sweep { &scenario.neoclassical_scaling } else { &scenario.neoclassical };
            p.linear_side()
        }
        _ => ThetaSide::Left,
    };
    QmcConfig::new(n).with_r_mode(r_mode).with_side(side).with_max_qubits(scenario.max_qubits)
}

/// One QMC run of `app`. Sweeps use the scaling instance of the neoclassical model.
pub fn run_app(app: App, config: &QmcConfig, scenario: &Scenario, sweep: bool) -> Result<AppRun> {
    Ok(match app {
        App::Simple => simple_qmc(&scenario.simple, config)?,
        App::Stress => stress_qmc(&scenario.stress, scenario.stress_m, config)?,
        App::Neoclassical => {
            let p = if sweep { &scenario.neoclassical_scaling } else { &scenario.neoclassical };
            neoclassical_qmc(p, config)?
        }
    })
}

/// The error a sweep reports: against the continuous value for the stress
/// test (so the discretisation plateau is visible), against the grid value
/// otherwise.
pub fn sweep_error(app: App, run: &AppRun) -> f64 {
    match app {
        App::Stress => run.reference_error,
        _ => run.abs_error,
    }
}

/// `|grid − continuous|` where the sweep error includes it, else `None`.
pub fn discretization_bias(app: App, scenario: &Scenario) -> Result<Option<f64>> {
    Ok(match app {
        App::Stress => {
            let model = StressModel::new(scenario.stress.clone(), scenario.stress_m)?;
            Some((model.grid_mean() - model.continuous_mean()?).abs())
        }
        _ => None,
    })
}

pub fn classical_problem(app: App, scenario: &Scenario) -> Result<ClassicalProblem> {
    Ok(match app {
        App::Simple => ClassicalProblem::Simple,
        App::Stress => ClassicalProblem::Stress(StressModel::new(scenario.stress.clone(), scenario.stress_m)?),
        App::Neoclassical => ClassicalProblem::Neoclassical(scenario.neoclassical_scaling),
    })
}

/// Seed of repeat `r` at sweep point `i`.
pub fn derived_seed(seed: u64, i: usize, r: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((i as u64) << 32 | r as u64)
}

/// Runs the sweep with up to `jobs` concurrent quantum points. Classical
/// points run sequentially so their timings are not disturbed.
pub fn error_sweep(spec: &SweepSpec, scenario: &Scenario, jobs: usize) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    match spec.estimator.r_mode() {
        Some(r_mode) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| BenchError::Argument(e.to_string()))?;
            pool.install(|| {
                spec.range
                    .par_iter()
                    .map(|&n| {
                        let n = n as usize;
                        let start = Instant::now();
                        let run = run_app(spec.app, &qmc_config(spec.app, r_mode, n, scenario, true), scenario, true)?;
                        Ok(SweepRow {
                            app: spec.app,
                            estimator: spec.estimator,
                            n: Some(n),
                            big_n: run.estimate.oracle_calls,
                            error: sweep_error(spec.app, &run),
                            wall_time_s: start.elapsed().as_secs_f64(),
                        })
                    })
                    .collect()
            })
        }
        None => {
            let problem = classical_problem(spec.app, scenario)?;
            spec.range
                .iter()
                .enumerate()
                .map(|(i, &big_n)| {
                    let mut err = 0.0;
                    let mut time = 0.0;
                    for r in 0..spec.repeats {
                        let run = problem.run(big_n, derived_seed(spec.seed, i, r))?;
                        err += run.abs_error;
                        time += run.wall_time;
                    }
                    let k = spec.repeats as f64;
                    Ok(SweepRow {
                        app: spec.app,
                        estimator: spec.estimator,
                        n: None,
                        big_n,
                        error: err / k,
                        wall_time_s: time / k,
                    })
                })
                .collect()
        }
    }
}

/// Median over `reps` sequential runs of the classical time per sample.
pub fn time_per_sample(problem: &ClassicalProblem, samples: u64, reps: usize, seed: u64) -> Result<f64> {
    let mut t = (0..reps.max(1))
        .map(|r| Ok(problem.run(samples, derived_seed(seed, usize::MAX >> 32, r))?.wall_time / samples as f64))
        .collect::<Result<Vec<f64>>>()?;
    t.sort_by(f64::total_cmp);
    Ok(t[t.len() / 2])
}
