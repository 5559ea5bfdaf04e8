use crate::error::{CurveError, Result};
use crate::Vec3;

use super::estimate::FrenetEstimate;

/// `sigma = kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2)` at interior nodes,
/// with the derivative by central differences.
///
/// Returns one value per node `1..len-1`.
pub fn geodesic_curvature_sigma(kappa: &[f64], tau: &[f64], s: &[f64]) -> Result<Vec<f64>> {
    let n = kappa.len();
    if tau.len() != n || s.len() != n {
        return Err(CurveError::InvalidParameter {
            name: "series",
            reason: format!("lengths differ: {} kappa, {} tau, {} s", n, tau.len(), s.len()),
        });
    }
    if n < 3 {
        return Err(CurveError::TooFewSamples { needed: 3, got: n });
    }
    if let Some(i) = kappa.iter().position(|k| !(*k > 0.0)) {
        return Err(CurveError::CurvatureVanishes { s: s[i] });
    }
    Ok((1..n - 1)
        .map(|i| {
            let dr = (tau[i + 1] / kappa[i + 1] - tau[i - 1] / kappa[i - 1]) / (s[i + 1] - s[i - 1]);
            let (k, t) = (kappa[i], tau[i]);
            k * k * dr / (k * k + t * t).powf(1.5)
        })
        .collect())
}

/// Darboux vector `W = tau T + kappa B` at each unflagged sample, as `(s, W)`.
pub fn darboux_series(estimate: &FrenetEstimate) -> Vec<(f64, Vec3)> {
    estimate
        .valid()
        .map(|e| (e.s, e.frame.tangent() * e.tau + e.frame.binormal() * e.kappa))
        .collect()
}
