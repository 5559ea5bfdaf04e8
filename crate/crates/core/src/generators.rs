//! Position vectors written as explicit (nested) integrals of intrinsic data.
//!
//! All indefinite integrals are anchored at the start of the domain and the
//! additive position constant is zero.

use std::f64::consts::FRAC_PI_2;

use crate::error::{CurveError, Result};
use crate::frenet::{reorthonormalize, CurveSample, Provenance, SampledCurve};
use crate::profiles::{slant_torsion_from_curvature, Interval, ScalarField, Sign, KAPPA_TOLERANCE};
use crate::quadrature::cumulative;
use crate::Vec3;

/// Composite rule used for the cumulative integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadratureRule {
    /// Fourth-order four-point cumulative rule.
    #[default]
    FourPoint,
}

/// Quadrature settings: inner integrals run on a grid `substeps` times finer than the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    rule: QuadratureRule,
    substeps: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rule: QuadratureRule::FourPoint,
            substeps: 2,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rule: QuadratureRule, substeps: usize) -> Result<Self> {
        if substeps < 2 {
            return Err(CurveError::InvalidParameter {
                name: "substeps",
                reason: format!("need at least 2, got {substeps}"),
            });
        }
        Ok(QuadratureConfig { rule, substeps })
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    pub fn substeps(&self) -> usize {
        self.substeps
    }

    /// `psi(s) = int (cos theta, sin theta, 0) ds`, `theta = int kappa`.
    pub fn plane_curve(&self, kappa: &ScalarField, domain: Interval, h: f64) -> Result<SampledCurve> {
        let fine = FineGrid::new(self, kappa, domain, h)?;
        let tangent: Vec<Vec3> = fine.theta.iter().map(|&u| Vec3::new(u.cos(), u.sin(), 0.0)).collect();
        fine.assemble(&tangent, |j, t| {
            let u = fine.theta[j];
            let n = Vec3::new(-u.sin(), u.cos(), 0.0);
            (t, n, Vec3::z(), 0.0)
        })
    }

    /// General helix with unit axis `e3` and `<T, e3> = n`.
    pub fn general_helix(&self, kappa: &ScalarField, n: f64, domain: Interval, h: f64) -> Result<SampledCurve> {
        let a = helix_cosine(n)?;
        let fine = FineGrid::new(self, kappa, domain, h)?;
        let tangent: Vec<Vec3> = fine
            .theta
            .iter()
            .map(|&th| {
                let u = th / a;
                Vec3::new(a * u.cos(), a * u.sin(), n)
            })
            .collect();
        fine.assemble(&tangent, |j, t| {
            let u = fine.theta[j] / a;
            let (su, cu) = u.sin_cos();
            (t, Vec3::new(-su, cu, 0.0), Vec3::new(-n * cu, -n * su, a), fine.kappa[j] * n / a)
        })
    }

    /// Slant helix whose principal normal makes the constant angle `arccos n` with `e3`.
    pub fn slant_helix(&self, kappa: &ScalarField, n: f64, domain: Interval, h: f64) -> Result<SampledCurve> {
        let a = helix_cosine(n)?;
        let m = n / a;
        slant_torsion_from_curvature(kappa, m, Sign::Plus, domain)?;
        let fine = FineGrid::new(self, kappa, domain, h)?;
        let normal: Vec<Vec3> = fine
            .theta
            .iter()
            .map(|&th| {
                let t = (m * th).clamp(-1.0, 1.0).asin() / n;
                Vec3::new(a * t.cos(), a * t.sin(), n)
            })
            .collect();
        let integrand: Vec<Vec3> = normal.iter().zip(&fine.kappa).map(|(v, k)| v * *k).collect();
        // Start the tangent where the Salkowski tangent starts, so that T stays a unit vector.
        let start = Vec3::new(0.0, -1.0, 0.0);
        let tangent: Vec<Vec3> = cumulative(&integrand, fine.h).into_iter().map(|v| v + start).collect();
        fine.assemble(&tangent, |j, t| {
            let x = m * fine.theta[j];
            let tau = fine.kappa[j] * x / (1.0 - x * x).sqrt();
            (t, normal[j], t.cross(&normal[j]), tau)
        })
    }
}

fn helix_cosine(n: f64) -> Result<f64> {
    if !(n > 0.0 && n < 1.0) {
        return Err(CurveError::BadAngle { n });
    }
    Ok((1.0 - n * n).sqrt())
}

/// Inner integration grid and cumulative total curvature.
struct FineGrid {
    domain: Interval,
    count: usize,
    q: usize,
    h: f64,
    kappa: Vec<f64>,
    theta: Vec<f64>,
}

impl FineGrid {
    fn new(config: &QuadratureConfig, kappa: &ScalarField, domain: Interval, h: f64) -> Result<Self> {
        let count = crate::frenet::step_count(domain, h)?;
        let q = config.substeps;
        let fine_count = count * q;
        let hf = if count == 0 { 0.0 } else { domain.len() / fine_count as f64 };
        let mut values = Vec::with_capacity(fine_count + 1);
        for j in 0..=fine_count {
            let s = if j == fine_count { domain.end } else { domain.start + j as f64 * hf };
            let k = kappa.eval(s);
            if !k.is_finite() {
                return Err(CurveError::InvalidParameter {
                    name: "kappa",
                    reason: format!("curvature is not finite at s = {s}"),
                });
            }
            if k < -KAPPA_TOLERANCE {
                return Err(CurveError::NegativeCurvature { s, value: k });
            }
            values.push(k.max(0.0));
        }
        let theta = cumulative(&values, hf);
        Ok(FineGrid {
            domain,
            count,
            q,
            h: hf,
            kappa: values,
            theta,
        })
    }

    /// Integrates `tangent` to positions and keeps every `q`-th fine node.
    fn assemble<F>(&self, tangent: &[Vec3], frame: F) -> Result<SampledCurve>
    where
        F: Fn(usize, Vec3) -> (Vec3, Vec3, Vec3, f64),
    {
        let position = cumulative(tangent, self.h);
        let step = if self.count == 0 { 1.0 } else { self.domain.len() / self.count as f64 };
        let mut samples = Vec::with_capacity(self.count + 1);
        for i in 0..=self.count {
            let j = i * self.q;
            let (t, n, b, tau) = frame(j, tangent[j]);
            let s = if i == self.count { self.domain.end } else { self.domain.start + i as f64 * step };
            samples.push(CurveSample {
                s,
                position: position[j],
                frame: reorthonormalize(t, n, b)?,
                kappa: self.kappa[j],
                tau,
            });
        }
        SampledCurve::new(step, samples, Provenance::ClosedForm)
    }
}

/// Plane curve with curvature `kappa`, using the default quadrature.
pub fn gen_plane_curve(kappa: &ScalarField, domain: Interval, h: f64) -> Result<SampledCurve> {
    QuadratureConfig::default().plane_curve(kappa, domain, h)
}

/// General helix with curvature `kappa` and `<T, e3> = n`, using the default quadrature.
pub fn gen_general_helix(kappa: &ScalarField, n: f64, domain: Interval, h: f64) -> Result<SampledCurve> {
    QuadratureConfig::default().general_helix(kappa, n, domain, h)
}

/// Slant helix with curvature `kappa` and `<N, e3> = n`, using the default quadrature.
pub fn gen_slant_helix(kappa: &ScalarField, n: f64, domain: Interval, h: f64) -> Result<SampledCurve> {
    QuadratureConfig::default().slant_helix(kappa, n, domain, h)
}

/// Salkowski curve (unit curvature slant helix) on a grid uniform in arclength `u = sin(n t) / m`.
///
/// `t_range` must satisfy `|n t| < pi/2`; `n = 1/2` is excluded because the
/// explicit coordinates have a pole there.
pub fn gen_salkowski(n: f64, t_range: Interval, samples: usize) -> Result<SampledCurve> {
    let a = helix_cosine(n)?;
    if (2.0 * n - 1.0).abs() < 1e-9 {
        return Err(CurveError::BadAngle { n });
    }
    if samples < 9 {
        return Err(CurveError::TooFewSamples { needed: 9, got: samples });
    }
    for t in [t_range.start, t_range.end] {
        if !((n * t).abs() < FRAC_PI_2) {
            return Err(CurveError::BranchViolation { t });
        }
    }
    let m = n / a;
    let (u0, u1) = ((n * t_range.start).sin() / m, (n * t_range.end).sin() / m);
    if !(u1 > u0) {
        return Err(CurveError::InvalidDomain { start: u0, end: u1 });
    }
    let h = (u1 - u0) / (samples - 1) as f64;
    let c = n / (4.0 * m);
    let (p, q) = ((n - 1.0) / (2.0 * n + 1.0), (n + 1.0) / (2.0 * n - 1.0));
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let u = if i + 1 == samples { u1 } else { u0 + i as f64 * h };
        let t = (m * u).clamp(-1.0, 1.0).asin() / n;
        let (st, ct) = t.sin_cos();
        let (snt, cnt) = (n * t).sin_cos();
        let position = Vec3::new(
            c * (p * ((2.0 * n + 1.0) * t).cos() + q * ((2.0 * n - 1.0) * t).cos() - 2.0 * ct),
            c * (p * ((2.0 * n + 1.0) * t).sin() - q * ((2.0 * n - 1.0) * t).sin() - 2.0 * st),
            -n / (4.0 * m * m) * (2.0 * n * t).cos(),
        );
        let tangent = Vec3::new(
            st * cnt - n * ct * snt,
            -(n * st * snt + ct * cnt),
            a * snt,
        );
        let normal = Vec3::new(a * ct, a * st, n);
        out.push(CurveSample {
            s: u,
            position,
            frame: reorthonormalize(tangent, normal, tangent.cross(&normal))?,
            kappa: 1.0,
            tau: snt / cnt,
        });
    }
    SampledCurve::new(h, out, Provenance::ClosedForm)
}
