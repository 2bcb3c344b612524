//! Seeded classical Monte Carlo, the baseline the quantum estimator is
//! compared against.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{NeoclassicalProblem, SimpleProblem, StressModel};
use crate::error::{invalid, QmcError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCRun {
    pub num_samples: u64,
    pub seed: u64,
    pub estimate: f64,
    pub abs_error: f64,
    /// Seconds spent sampling and averaging.
    pub wall_time: f64,
}

/// `(1/N) Σ f(x_i)` with `x_i` drawn by `sample` from a ChaCha8 stream seeded
/// with `seed`. Single-threaded so that `wall_time` is a per-core figure.
pub fn classical_mc<X>(
    mut sample: impl FnMut(&mut ChaCha8Rng) -> X,
    f: impl Fn(&X) -> f64,
    num_samples: u64,
    seed: u64,
    exact: f64,
) -> Result<MCRun> {
    if num_samples == 0 {
        return invalid("classical Monte Carlo needs at least one sample");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let mut sum = 0.0;
    for _ in 0..num_samples {
        sum += f(&sample(&mut rng));
    }
    let estimate = sum / num_samples as f64;
    let wall_time = start.elapsed().as_secs_f64();
    Ok(MCRun { num_samples, seed, estimate, abs_error: (estimate - exact).abs(), wall_time })
}

/// The three benchmark problems with their continuous sampling laws.
#[derive(Clone, Debug)]
pub enum ClassicalProblem {
    /// `sin²(X)`, `X ~ N(0, 1)`.
    Simple,
    /// Two-period loss, `d_t ~ Beta(a, b)` i.i.d.
    Stress(StressModel),
    /// `C1 + C2 z'`, `z' ~ N(mean, σ)`.
    Neoclassical(NeoclassicalProblem),
}

fn dist_err(e: impl std::fmt::Display) -> QmcError {
    QmcError::InvalidArgument(e.to_string())
}

impl ClassicalProblem {
    /// The exact continuous expectation.
    pub fn exact(&self) -> Result<f64> {
        match self {
            ClassicalProblem::Simple => Ok(SimpleProblem::exact_mean()),
            ClassicalProblem::Stress(model) => model.continuous_mean(),
            ClassicalProblem::Neoclassical(p) => Ok(p.continuous_mean()),
        }
    }

    pub fn run(&self, num_samples: u64, seed: u64) -> Result<MCRun> {
        let exact = self.exact()?;
        match self {
            ClassicalProblem::Simple => {
                let normal: Normal<f64> = Normal::new(0.0, 1.0).map_err(dist_err)?;
                classical_mc(|r| normal.sample(r), |x: &f64| x.sin().powi(2), num_samples, seed, exact)
            }
            ClassicalProblem::Stress(model) => {
                let s = model.params.credit_loss_rate;
                let beta = Beta::new(s.a, s.b).map_err(dist_err)?;
                classical_mc(|r| (beta.sample(r), beta.sample(r)), |&(d1, d2)| model.loss(d1, d2), num_samples, seed, exact)
            }
            ClassicalProblem::Neoclassical(p) => {
                let normal = Normal::new(p.mean, p.sigma).map_err(dist_err)?;
                classical_mc(|r| normal.sample(r), |z| p.c1 + p.c2 * z, num_samples, seed, exact)
            }
        }
    }

    /// Standard deviation of the random variable, from a large seeded sample.
    pub fn sample_std(&self, num_samples: u64, seed: u64) -> Result<f64> {
        let exact = self.exact()?;
        let mut sq = 0.0;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut push = |v: f64| sq += (v - exact).powi(2);
        match self {
            ClassicalProblem::Simple => {
                let normal: Normal<f64> = Normal::new(0.0, 1.0).map_err(dist_err)?;
                (0..num_samples).for_each(|_| push(normal.sample(&mut rng).sin().powi(2)));
            }
            ClassicalProblem::Stress(model) => {
                let s = model.params.credit_loss_rate;
                let beta = Beta::new(s.a, s.b).map_err(dist_err)?;
                (0..num_samples).for_each(|_| push(model.loss(beta.sample(&mut rng), beta.sample(&mut rng))));
            }
            ClassicalProblem::Neoclassical(p) => {
                let normal = Normal::new(p.mean, p.sigma).map_err(dist_err)?;
                (0..num_samples).for_each(|_| push(p.c1 + p.c2 * normal.sample(&mut rng)));
            }
        }
        Ok((sq / num_samples.max(1) as f64).sqrt())
    }
}
