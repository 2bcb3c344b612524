use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Random-variable values on the register grid, mapped into `[0, 1]`, with
/// the affine map back to original units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomVariableSpec {
    values: Vec<f64>,
    f_min: f64,
    f_max: f64,
    degenerate: bool,
}

impl RandomVariableSpec {
    /// Values that already lie in `[0, 1]` and are used as-is (`f_min = 0`, `f_max = 1`).
    pub fn unit(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return invalid("unit random variable values must lie in [0, 1]");
        }
        Ok(RandomVariableSpec { values, f_min: 0.0, f_max: 1.0, degenerate: false })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maps a normalised value back to original units.
    pub fn to_original(&self, normalized: f64) -> f64 {
        if self.degenerate {
            self.f_min
        } else {
            self.f_min + normalized * (self.f_max - self.f_min)
        }
    }

    /// `Σ p(i) f_norm(i)` for the given joint masses.
    pub fn expectation(&self, masses: &[f64]) -> f64 {
        self.values.iter().zip(masses).map(|(v, p)| v * p).sum()
    }
}

/// Affine map of `raw` onto `[0, 1]` using the grid minimum and maximum.
/// Constant input maps to 0.5 everywhere and is flagged degenerate.
pub fn normalize_rv(raw: &[f64]) -> Result<RandomVariableSpec> {
    if raw.is_empty() {
        return invalid("random variable has no values");
    }
    if raw.iter().any(|v| !v.is_finite()) {
        return invalid("random variable values must be finite");
    }
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return Ok(RandomVariableSpec { values: vec![0.5; raw.len()], f_min: lo, f_max: hi, degenerate: true });
    }
    let values = raw.iter().map(|v| ((v - lo) / (hi - lo)).clamp(0.0, 1.0)).collect();
    Ok(RandomVariableSpec { values, f_min: lo, f_max: hi, degenerate: false })
}

/// `f_min + μ_norm (f_max − f_min)`, or the constant for a degenerate variable.
pub fn denormalize_mu(mu_normalized: f64, rv: &RandomVariableSpec) -> Result<f64> {
    if !mu_normalized.is_finite() {
        return invalid("normalised mean must be finite");
    }
    Ok(rv.to_original(mu_normalized))
}
