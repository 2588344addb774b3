pub mod converge;
pub mod figures;
pub mod opo;
pub mod verify;

use crate::error::{CliError, CliResult};

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(CliError::BadArgs(format!("need a finite range with min < max, got [{lo}, {hi}]")));
    }
    if steps < 2 {
        return Err(CliError::BadArgs(format!("need at least 2 steps, got {steps}")));
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { hi } else { lo + k as f64 * h })
        .collect())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}
