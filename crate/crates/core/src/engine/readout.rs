use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Which half of the symmetric outcome distribution to read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSide {
    /// `θ ≤ 1/2`.
    #[default]
    Left,
    /// `θ ≥ 1/2`.
    Right,
}

/// `θ = y / 2^n` of the most probable outcome on the chosen side; ties go to
/// the smaller `θ`.
pub fn extract_theta(distribution: &[f64], side: ThetaSide) -> Result<f64> {
    let m = distribution.len();
    if m < 2 || !m.is_power_of_two() {
        return invalid(format!("distribution length {m} is not 2^n with n >= 1"));
    }
    let half = m / 2;
    let range = match side {
        ThetaSide::Left => 0..half + 1,
        ThetaSide::Right => half..m,
    };
    let mut best = range.start;
    for y in range {
        if distribution[y] > distribution[best] {
            best = y;
        }
    }
    Ok(best as f64 / m as f64)
}

/// `μ = (1 − cos πθ) / 2`.
pub fn theta_to_mu(theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return invalid(format!("theta {theta} outside [0, 1]"));
    }
    Ok((1.0 - (std::f64::consts::PI * theta).cos()) / 2.0)
}
