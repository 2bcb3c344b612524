//! Least-squares fits in log-log and log-linear scale.

use serde::{Deserialize, Serialize};

use crate::error::{arg_err, Result};

/// Ordinary least squares `y = intercept + slope x`, with `R²`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return arg_err(format!("linear fit needs matching inputs of length >= 2, got {} and {}", xs.len(), ys.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return arg_err("linear fit needs at least two distinct x values");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok((slope, intercept, r2))
}

/// `log10 ε = intercept + slope · log10 N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Included `(log10 N, log10 ε)` pairs.
    pub points: Vec<(f64, f64)>,
    /// Dropped `(N, ε)` pairs: zero errors and, with the plateau filter, errors
    /// below twice the discretisation bias.
    pub excluded: Vec<(f64, f64)>,
}

impl ScalingFit {
    pub fn error_at(&self, n: f64) -> f64 {
        10f64.powf(self.intercept + self.slope * n.log10())
    }

    /// The same fit with its slope replaced, anchored at the first included point.
    pub fn with_slope(&self, slope: f64) -> ScalingFit {
        let (x0, y0) = self.points.first().copied().unwrap_or((0.0, self.intercept));
        ScalingFit { slope, intercept: y0 - slope * x0, ..self.clone() }
    }
}

/// Fits `(N, ε)` pairs in log-log scale. With `plateau_bias = Some(b)` points
/// with `ε < 2b` are excluded.
pub fn loglog_fit(points: &[(f64, f64)], plateau_bias: Option<f64>) -> Result<ScalingFit> {
    let mut included = Vec::new();
    let mut excluded = Vec::new();
    for &(n, e) in points {
        let plateau = plateau_bias.is_some_and(|b| e < 2.0 * b);
        if !(n > 0.0 && e > 0.0 && n.is_finite() && e.is_finite()) || plateau {
            excluded.push((n, e));
        } else {
            included.push((n.log10(), e.log10()));
        }
    }
    if included.len() < 3 {
        return arg_err(format!("log-log fit needs at least 3 usable points, got {}", included.len()));
    }
    let xs: Vec<f64> = included.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = included.iter().map(|p| p.1).collect();
    let (slope, intercept, r_squared) = linear_fit(&xs, &ys)?;
    Ok(ScalingFit { slope, intercept, r_squared, points: included, excluded })
}

/// `log10 depth = c0 + c1 n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthFit {
    pub c0: f64,
    pub c1: f64,
    pub r_squared: f64,
}

impl DepthFit {
    pub fn fit(ns: &[usize], depths: &[u64]) -> Result<Self> {
        if depths.iter().any(|&d| d == 0) {
            return arg_err("depth fit needs positive depths");
        }
        let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
        let ys: Vec<f64> = depths.iter().map(|&d| (d as f64).log10()).collect();
        let (c1, c0, r_squared) = linear_fit(&xs, &ys)?;
        Ok(DepthFit { c0, c1, r_squared })
    }

    pub fn depth(&self, n: f64) -> f64 {
        10f64.powf(self.c0 + self.c1 * n)
    }
}
