//! Least-squares fits on log-log data.

use crate::error::{Error, Result};

/// Ordinary least-squares line `log y = intercept + slope * log x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination in log space.
    pub r_squared: f64,
}

fn logs(xs: &[f64], ys: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter("a fit needs at least two paired points".into()));
    }
    if xs.iter().chain(ys).any(|&v| v <= 0.0 || !v.is_finite()) {
        return Err(Error::InvalidParameter("log-log fits need positive finite data".into()));
    }
    Ok((xs.iter().map(|v| v.ln()).collect(), ys.iter().map(|v| v.ln()).collect()))
}

pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    let (lx, ly) = logs(xs, ys)?;
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("x values must not all be equal".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LogLogFit { slope, intercept, r_squared })
}

/// Fit of `y ≈ c * model` with a single constant `c`, taken as the geometric
/// mean of `y / model`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantFit {
    pub constant: f64,
    /// Root-mean-square of `y / (c * model) - 1`.
    pub relative_rms: f64,
    /// Largest `|y / (c * model) - 1|`.
    pub max_relative: f64,
}

pub fn constant_fit(model: &[f64], ys: &[f64]) -> Result<ConstantFit> {
    let (lm, ly) = logs(model, ys)?;
    let k = lm.len() as f64;
    let constant = (ly.iter().zip(&lm).map(|(y, m)| y - m).sum::<f64>() / k).exp();
    let rel: Vec<f64> = model.iter().zip(ys).map(|(m, y)| y / (constant * m) - 1.0).collect();
    let relative_rms = (rel.iter().map(|r| r * r).sum::<f64>() / k).sqrt();
    let max_relative = rel.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    Ok(ConstantFit {
        constant,
        relative_rms,
        max_relative,
    })
}
