use crate::error::{CurveError, Result};
use crate::interp::hermite_weights;
use crate::quadrature::cumulative;
use crate::Vec3;

use super::curve::SampledCurve;

/// Torsion magnitude below which the residual is undefined.
pub const TORSION_FLOOR: f64 = 1e-9;

/// Residual norms on a uniform grid in total curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSeries {
    pub theta: Vec<f64>,
    pub residual: Vec<f64>,
}

impl ResidualSeries {
    pub fn max(&self) -> f64 {
        self.residual.iter().copied().fold(0.0, f64::max)
    }
}

/// Arclength at which the cumulative total curvature reaches `target`.
struct ThetaInverse<'a> {
    curve: &'a SampledCurve,
    theta: Vec<f64>,
}

impl ThetaInverse<'_> {
    fn solve(&self, target: f64) -> f64 {
        let samples = self.curve.samples();
        let i = self.theta.partition_point(|&t| t <= target).clamp(1, self.theta.len() - 1) - 1;
        let h = self.curve.step();
        let (t0, t1) = (self.theta[i], self.theta[i + 1]);
        let (d0, d1) = (samples[i].kappa * h, samples[i + 1].kappa * h);
        let eval = |u: f64| {
            let w = hermite_weights(u);
            w[0] * t0 + w[1] * d0 + w[2] * t1 + w[3] * d1
        };
        let slope = |u: f64| {
            let u2 = u * u;
            (6.0 * u2 - 6.0 * u) * t0 + (3.0 * u2 - 4.0 * u + 1.0) * d0 + (-6.0 * u2 + 6.0 * u) * t1 + (3.0 * u2 - 2.0 * u) * d1
        };
        let mut u = if t1 > t0 { ((target - t0) / (t1 - t0)).clamp(0.0, 1.0) } else { 0.0 };
        for _ in 0..30 {
            let d = slope(u);
            if d <= 0.0 {
                break;
            }
            let step = (eval(u) - target) / d;
            u = (u - step).clamp(0.0, 1.0);
            if step.abs() < 1e-16 {
                break;
            }
        }
        samples[i].s + u * h
    }
}

/// Norm of the third-order tangent equation in total curvature `theta`,
///
/// `T'''/f - f' T''/f^2 + (1 + f^2)/f T' - f'/f^2 T`, `f = tau / kappa`,
///
/// evaluated by finite differences at the interior nodes of a uniform `theta` grid.
pub fn tangent_ode_residual(curve: &SampledCurve, theta_step: f64) -> Result<ResidualSeries> {
    let samples = curve.samples();
    if samples.len() < 7 {
        return Err(CurveError::TooFewSamples {
            needed: 7,
            got: samples.len(),
        });
    }
    if !(theta_step.is_finite() && theta_step > 0.0) {
        return Err(CurveError::InvalidParameter {
            name: "theta_step",
            reason: format!("must be positive, got {theta_step}"),
        });
    }
    if let Some(p) = samples.iter().find(|p| !(p.kappa > 0.0)) {
        return Err(CurveError::NonPositiveCurvature { s: p.s, value: p.kappa });
    }
    let kappa: Vec<f64> = samples.iter().map(|p| p.kappa).collect();
    let inverse = ThetaInverse {
        curve,
        theta: cumulative(&kappa, curve.step()),
    };
    let total = inverse.theta[inverse.theta.len() - 1];
    let nodes = (total / theta_step).floor() as usize + 1;
    if nodes < 5 {
        return Err(CurveError::TooFewSamples { needed: 5, got: nodes });
    }
    let mut tangent = Vec::with_capacity(nodes);
    let mut ratio = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let theta = k as f64 * theta_step;
        let s = inverse.solve(theta).clamp(curve.start(), curve.end());
        let (kap, tau) = curve.curvature_at(s)?;
        if tau.abs() < TORSION_FLOOR {
            return Err(CurveError::TorsionVanishes { theta });
        }
        tangent.push(curve.frame_at(s)?.tangent());
        ratio.push(tau / kap);
    }
    let h = theta_step;
    let mut out = ResidualSeries {
        theta: Vec::with_capacity(nodes - 4),
        residual: Vec::with_capacity(nodes - 4),
    };
    for i in 2..nodes - 2 {
        let t = &tangent;
        let d1: Vec3 = (t[i + 1] - t[i - 1]) / (2.0 * h);
        let d2: Vec3 = (t[i + 1] - t[i] * 2.0 + t[i - 1]) / (h * h);
        let d3: Vec3 = (t[i + 2] - t[i + 1] * 2.0 + t[i - 1] * 2.0 - t[i - 2]) / (2.0 * h * h * h);
        let f = ratio[i];
        let df = (ratio[i + 1] - ratio[i - 1]) / (2.0 * h);
        let r = d3 / f - d2 * (df / (f * f)) + d1 * ((1.0 + f * f) / f) - t[i] * (df / (f * f));
        out.theta.push(i as f64 * h);
        out.residual.push(r.norm());
    }
    Ok(out)
}
