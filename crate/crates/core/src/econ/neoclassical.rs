//! Bellman error of a log-linear value function `V(k, z) = s1 ln k + s2 ln z + s0`
//! for the neoclassical growth model with full depreciation and log utility.
//!
//! With `ln z' ≈ z' − 1` the error is the expectation of `C1 + C2 z'` over the
//! productivity shock `z'`.

use serde::{Deserialize, Serialize};

use super::AppRun;
use crate::dist::{discretize_normal, DiscretizedDistribution};
use crate::engine::{normalize_rv, run_qmc, QmcConfig, RandomVariableSpec, ThetaSide};
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeoclassicalParams {
    /// Capital share α.
    pub alpha_cap: f64,
    /// Discount factor β.
    pub beta_disc: f64,
    /// Persistence of log productivity.
    pub rho: f64,
    pub sigma: f64,
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub k: f64,
    pub z: f64,
}

impl NeoclassicalParams {
    /// Value-function weights set to the analytic solution.
    pub fn at_optimum(alpha_cap: f64, beta_disc: f64, rho: f64, sigma: f64, k: f64, z: f64) -> Result<Self> {
        let (r, s, q) = neoclassical_closed_form(alpha_cap, beta_disc, rho)?;
        Ok(NeoclassicalParams { alpha_cap, beta_disc, rho, sigma, s0: q, s1: r, s2: s, k, z })
    }
}

/// `(R, S, Q)` of the analytic value function `R ln k + S ln z + Q`.
pub fn neoclassical_closed_form(alpha: f64, beta: f64, rho: f64) -> Result<(f64, f64, f64)> {
    if ![alpha, beta, rho].iter().all(|v| v.is_finite()) {
        return invalid("model parameters must be finite");
    }
    let ab = alpha * beta;
    if (1.0 - ab).abs() < 1e-15 || (1.0 - beta * rho).abs() < 1e-15 || (1.0 - beta).abs() < 1e-15 {
        return invalid(format!("singular parameters alpha = {alpha}, beta = {beta}, rho = {rho}"));
    }
    if !(0.0..1.0).contains(&ab) || ab == 0.0 {
        return invalid(format!("alpha beta = {ab} must lie in (0, 1)"));
    }
    let r = alpha / (1.0 - ab);
    let s = (1.0 + beta * r) / (1.0 - beta * rho);
    let q = (1.0 - ab).ln() / (1.0 - beta) + beta * r * ab.ln() / (1.0 - beta);
    Ok((r, s, q))
}

/// `(C1, C2)` of the linearised Bellman error `C1 + C2 z'`.
pub fn neoclassical_coeffs(p: &NeoclassicalParams) -> Result<(f64, f64)> {
    let NeoclassicalParams { alpha_cap: a, beta_disc: b, s0, s1, s2, k, z, .. } = *p;
    if !(k > 0.0 && z > 0.0) {
        return invalid(format!("state (k, z) = ({k}, {z}) must be positive"));
    }
    if !(s1 > a) {
        return invalid(format!("s1 = {s1} must exceed alpha = {a}"));
    }
    let c1 = (s1 - a * (1.0 + b * s1)) * k.ln() + (s2 - (1.0 + b * s1)) * z.ln() + (1.0 - b) * s0
        - (a / s1).ln()
        - b * s1 * (1.0 - a / s1).ln()
        + b * s2;
    Ok((c1, -b * s2))
}

/// The loss `C1 + C2 E[z']` with `E[z'] = 1` (mean-one shock).
pub fn neoclassical_loss(p: &NeoclassicalParams) -> Result<f64> {
    let (c1, c2) = neoclassical_coeffs(p)?;
    Ok(c1 + c2)
}

/// Expectation of `C1 + C2 x` for `x` normal with the given mean, restricted
/// to a `2^m` grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeoclassicalProblem {
    pub c1: f64,
    pub c2: f64,
    pub mean: f64,
    pub sigma: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub m: usize,
}

impl NeoclassicalProblem {
    /// `C1 = 30`, `C2 = −29`, `σ = 0.02`, grid `[0.94, 1.06]` (three standard
    /// deviations), `m = 5`.
    pub fn benchmark() -> Self {
        NeoclassicalProblem { c1: 30.0, c2: -29.0, mean: 1.0, sigma: 0.02, x_min: 0.94, x_max: 1.06, m: 5 }
    }

    /// The benchmark on the centred grid `x_i = −x_max + 2 i x_max / (2^m − 1)`
    /// with `x_max = 1.06`. On the three-sigma grid the normalised mean is
    /// exactly 1/2 and every estimate is exact, so error scaling is measured
    /// here instead.
    pub fn scaling_benchmark() -> Self {
        NeoclassicalProblem { x_min: -1.06, ..Self::benchmark() }
    }

    pub fn distribution(&self) -> Result<DiscretizedDistribution> {
        discretize_normal(self.m, self.mean, self.sigma, self.x_min, self.x_max)
    }

    pub fn raw_values(&self) -> Result<Vec<f64>> {
        Ok(self.distribution()?.grid().iter().map(|x| self.c1 + self.c2 * x).collect())
    }

    pub fn random_variable(&self) -> Result<RandomVariableSpec> {
        normalize_rv(&self.raw_values()?)
    }

    pub fn grid_mean(&self) -> Result<f64> {
        Ok(self.distribution()?.expect(|x| self.c1 + self.c2 * x))
    }

    pub fn continuous_mean(&self) -> f64 {
        self.c1 + self.c2 * self.mean
    }

    /// Readout side for the linear encoding, where `P(ancilla = 1)` is 1/2 plus
    /// a term with the sign of (mean grid position − midpoint). Decided from
    /// the shock's location, not from the answer.
    pub fn linear_side(&self) -> ThetaSide {
        if self.mean > 0.5 * (self.x_min + self.x_max) {
            ThetaSide::Right
        } else {
            ThetaSide::Left
        }
    }
}

/// QMC estimate of the expected Bellman error; `abs_error` is against the grid mean.
pub fn neoclassical_qmc(problem: &NeoclassicalProblem, config: &QmcConfig) -> Result<AppRun> {
    config.check_register_budget(&[problem.m])?;
    let dist = problem.distribution()?;
    let rv = problem.random_variable()?;
    let estimate = run_qmc(config, &[dist], &rv)?;
    AppRun::new(estimate, problem.grid_mean()?, problem.continuous_mean())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let (r, s, _) = neoclassical_closed_form(0.36, 0.96, 0.9).unwrap();
        assert!((r - 0.36 / (1.0 - 0.3456)).abs() < 1e-14);
        assert!((r - 0.5501).abs() < 1e-4);
        assert!((s - (1.0 + 0.96 * r) / (1.0 - 0.864)).abs() < 1e-12);
        let (r0, s0, _) = neoclassical_closed_form(0.36, 0.96, 0.0).unwrap();
        assert!((s0 - (1.0 + 0.96 * r0)).abs() < 1e-14);
        let (r, s, _) = neoclassical_closed_form(0.3, 1e-12, 0.5).unwrap();
        assert!((r - 0.3).abs() < 1e-9 && (s - 1.0).abs() < 1e-9);
        assert!(neoclassical_closed_form(0.5, 1.0, 0.5).is_err());
    }

    #[test]
    fn optimum_has_zero_loss() {
        for &(a, b, rho) in &[(0.36, 0.96, 0.9), (0.3, 0.9, 0.0), (0.5, 0.99, 0.5)] {
            let p = NeoclassicalParams::at_optimum(a, b, rho, 0.02, 1.0, 1.0).unwrap();
            assert!(neoclassical_loss(&p).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn c2_is_minus_beta_s2() {
        let p = NeoclassicalParams { alpha_cap: 0.36, beta_disc: 0.96, rho: 0.9, sigma: 0.02, s0: 1.0, s1: 0.5, s2: 30.2, k: 1.0, z: 1.0 };
        assert!((neoclassical_coeffs(&p).unwrap().1 + 28.992).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let mut p = NeoclassicalParams::at_optimum(0.36, 0.96, 0.9, 0.02, 1.0, 1.0).unwrap();
        p.s1 = 0.36;
        assert!(neoclassical_coeffs(&p).is_err());
        p.s1 = 0.5;
        p.k = 0.0;
        assert!(neoclassical_coeffs(&p).is_err());
    }

    #[test]
    fn benchmark_grid() {
        let b = NeoclassicalProblem::benchmark();
        let rv = b.random_variable().unwrap();
        assert!((rv.f_min() + 0.74).abs() < 1e-12 && (rv.f_max() - 2.74).abs() < 1e-12);
        assert!((b.grid_mean().unwrap() - 1.0).abs() < 1e-12);
    }
}
