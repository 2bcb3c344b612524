use serde::{Deserialize, Serialize};

use super::encode::{build_f, build_r_exact, build_r_linear, encoded_p1, tensor, LinearRParams};
use super::qpe::{estimation_distribution, Strategy};
use super::readout::{extract_theta, theta_to_mu, ThetaSide};
use super::rv::{denormalize_mu, RandomVariableSpec};
use crate::circuit::Circuit;
use crate::dist::{exact_state_prep, DiscretizedDistribution, VariationalAnsatz};
use crate::error::{invalid, QmcError, Result};
use crate::sim::DEFAULT_MAX_QUBITS;

/// How the random variable is loaded onto the ancilla.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RMode {
    /// Uniformly controlled RY, exact for any variable.
    #[default]
    Exact,
    /// RY cascade for a variable affine in the grid index, `c_s = (3π/2^n)^{1/3}`.
    Linear,
}

/// How the distribution is loaded onto the data register.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum LoaderMode {
    #[default]
    ExactPrep,
    /// One trained ansatz per dimension.
    Trained(Vec<VariationalAnsatz>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QmcConfig {
    pub n: usize,
    pub r_mode: RMode,
    pub loader: LoaderMode,
    pub theta_side: ThetaSide,
    pub strategy: Strategy,
    /// Register budget `Σm + 1 + n`; the simulator itself never exceeds
    /// [`DEFAULT_MAX_QUBITS`] per state vector.
    pub max_qubits: usize,
}

impl QmcConfig {
    pub fn new(n: usize) -> Self {
        QmcConfig {
            n,
            r_mode: RMode::Exact,
            loader: LoaderMode::ExactPrep,
            theta_side: ThetaSide::Left,
            strategy: Strategy::Auto,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    pub fn with_r_mode(mut self, r_mode: RMode) -> Self {
        self.r_mode = r_mode;
        self
    }

    pub fn with_loader(mut self, loader: LoaderMode) -> Self {
        self.loader = loader;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_side(mut self, side: ThetaSide) -> Self {
        self.theta_side = side;
        self
    }

    pub fn with_max_qubits(mut self, max_qubits: usize) -> Self {
        self.max_qubits = max_qubits;
        self
    }

    /// Fails with [`QmcError::ResourceLimit`] unless registers of `m` grid qubits
    /// per dimension, the ancilla and `n` estimation qubits fit the budget.
    /// Applications call this before building their grids.
    pub fn check_register_budget(&self, ms: &[usize]) -> Result<()> {
        let qubits = ms.iter().sum::<usize>() + 1 + self.n;
        if qubits > self.max_qubits {
            return Err(QmcError::ResourceLimit {
                qubits,
                cap: self.max_qubits,
                bytes: (1u128 << qubits.min(120)) * 16,
            });
        }
        Ok(())
    }
}

/// Outcome of one QMC run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseEstimate {
    pub n: usize,
    /// Controlled-Q applications, `2^n − 1`.
    pub oracle_calls: u64,
    /// Probability of each `y`, `θ = y / 2^n`.
    pub distribution: Vec<f64>,
    pub theta_hat: f64,
    /// Estimate of the normalised mean `Σ p(i) f_norm(i)`.
    pub mu_normalized: f64,
    /// Estimate in original units.
    pub mu: f64,
    /// Exact `P(ancilla = 1)` of the F state that was estimated.
    pub encoded_p1: f64,
}

/// Masses of the product distribution, first dimension most significant.
pub fn joint_masses(dists: &[DiscretizedDistribution]) -> Vec<f64> {
    dists.iter().fold(vec![1.0], |acc, d| {
        acc.iter().flat_map(|a| d.masses().iter().map(move |p| a * p)).collect()
    })
}

fn is_affine(values: &[f64]) -> bool {
    let last = (values.len() - 1) as f64;
    let (v0, v1) = (values[0], values[values.len() - 1]);
    values.iter().enumerate().all(|(i, v)| (v - (v0 + (v1 - v0) * i as f64 / last)).abs() < 1e-9)
}

/// The F circuit for `config` plus the linear-encoding parameters when used.
pub fn assemble_f(
    config: &QmcConfig,
    dists: &[DiscretizedDistribution],
    rv: &RandomVariableSpec,
) -> Result<(Circuit, Option<LinearRParams>)> {
    if dists.is_empty() {
        return invalid("at least one distribution is required");
    }
    let data: usize = dists.iter().map(DiscretizedDistribution::m).sum();
    if rv.len() != 1usize.checked_shl(data as u32).unwrap_or(0) {
        return invalid(format!("random variable has {} values for {data} data qubits", rv.len()));
    }
    let loaders: Vec<Circuit> = match &config.loader {
        LoaderMode::ExactPrep => dists.iter().map(exact_state_prep).collect(),
        LoaderMode::Trained(ansatze) => {
            if ansatze.len() != dists.len() {
                return invalid(format!("{} trained loaders for {} dimensions", ansatze.len(), dists.len()));
            }
            for (a, d) in ansatze.iter().zip(dists) {
                if a.m() != d.m() {
                    return invalid(format!("trained loader has {} qubits, distribution {}", a.m(), d.m()));
                }
            }
            ansatze.iter().map(VariationalAnsatz::circuit).collect()
        }
    };
    let a = tensor(&loaders)?;
    let register: Vec<usize> = (0..data).collect();
    let (r, lin) = match config.r_mode {
        RMode::Exact => (build_r_exact(rv, &register, data, data + 1)?, None),
        RMode::Linear => {
            if dists.len() != 1 {
                return invalid("linear encoding is only defined for one dimension");
            }
            if !is_affine(rv.values()) {
                return invalid("linear encoding needs a random variable affine in the grid index");
            }
            let p = LinearRParams::for_estimation_qubits(data, config.n)?;
            (build_r_linear(&p, &register, data, data + 1)?, Some(p))
        }
    };
    Ok((build_f(&a, &r)?, lin))
}

/// Builds A, R, F and phase estimation, and reads out `θ̂`, `μ̂`.
pub fn run_qmc(config: &QmcConfig, dists: &[DiscretizedDistribution], rv: &RandomVariableSpec) -> Result<PhaseEstimate> {
    config.check_register_budget(&dists.iter().map(|d| d.m()).collect::<Vec<_>>())?;
    let (f, lin) = assemble_f(config, dists, rv)?;
    let distribution = estimation_distribution(&f, config.n, config.strategy)?;
    let theta_hat = extract_theta(&distribution, config.theta_side)?;
    let p1_hat = theta_to_mu(theta_hat)?;
    let mu_normalized = match lin {
        None => p1_hat,
        Some(p) => {
            let v = rv.values();
            let (v0, v1) = (v[0], v[v.len() - 1]);
            v0 + (v1 - v0) * p.t_mean_from_p1(p1_hat)
        }
    };
    Ok(PhaseEstimate {
        n: config.n,
        oracle_calls: (1u64 << config.n) - 1,
        distribution,
        theta_hat,
        mu_normalized,
        mu: denormalize_mu(mu_normalized, rv)?,
        encoded_p1: encoded_p1(&f)?,
    })
}
