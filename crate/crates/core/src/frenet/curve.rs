use crate::error::{CurveError, Result};
use crate::interp::{hermite_weights, lagrange4_weights, UniformGrid};
use crate::profiles::Interval;
use crate::Vec3;

use super::frame::{reorthonormalize, FrenetFrame};

/// One point of an arclength-parameterized curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub position: Vec3,
    pub frame: FrenetFrame,
    pub kappa: f64,
    pub tau: f64,
}

/// Where a sampled curve came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Integrated,
    ClosedForm,
    External,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Integrated => "integrated",
            Provenance::ClosedForm => "closed-form",
            Provenance::External => "external",
        }
    }
}

/// Curve sampled on a uniform arclength grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    step: f64,
    samples: Vec<CurveSample>,
    provenance: Provenance,
}

impl SampledCurve {
    /// Checks that consecutive arclengths differ by `step` to within `1e-12` (relative).
    pub fn new(step: f64, samples: Vec<CurveSample>, provenance: Provenance) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(CurveError::InvalidParameter {
                name: "step",
                reason: format!("must be positive, got {step}"),
            });
        }
        if samples.is_empty() {
            return Err(CurveError::TooFewSamples { needed: 1, got: 0 });
        }
        for (i, w) in samples.windows(2).enumerate() {
            let tol = 1e-12 * w[1].s.abs().max(1.0);
            if !((w[1].s - w[0].s - step).abs() <= tol) {
                return Err(CurveError::NonUniformGrid { index: i + 1 });
            }
        }
        Ok(SampledCurve {
            step,
            samples,
            provenance,
        })
    }

    /// `pos0 + (s - start) * tangent` over `domain`; curvature and torsion are zero.
    pub fn straight_line(pos0: Vec3, tangent: Vec3, domain: Interval, step: f64) -> Result<Self> {
        let frame = FrenetFrame::completing(tangent)?;
        let count = step_count(domain, step)?;
        let h = if count == 0 { step } else { domain.len() / count as f64 };
        let samples = (0..=count)
            .map(|i| {
                let s = if i == count { domain.end } else { domain.start + i as f64 * h };
                CurveSample {
                    s,
                    position: pos0 + frame.tangent() * (s - domain.start),
                    frame,
                    kappa: 0.0,
                    tau: 0.0,
                }
            })
            .collect();
        SampledCurve::new(h, samples, Provenance::ClosedForm)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn start(&self) -> f64 {
        self.samples[0].s
    }

    pub fn end(&self) -> f64 {
        self.samples[self.samples.len() - 1].s
    }

    pub fn positions(&self) -> Vec<Vec3> {
        self.samples.iter().map(|p| p.position).collect()
    }

    pub fn grid(&self) -> UniformGrid {
        UniformGrid {
            start: self.start(),
            step: self.step,
            len: self.samples.len(),
        }
    }

    /// Same samples with a different provenance tag.
    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Applies `x -> rotation * x + offset` to positions and frames.
    pub fn transformed(&self, rotation: &nalgebra::Matrix3<f64>, offset: Vec3) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|p| CurveSample {
                position: rotation * p.position + offset,
                frame: p.frame.rotated(rotation),
                ..*p
            })
            .collect();
        SampledCurve {
            samples,
            ..self.clone()
        }
    }

    fn locate(&self, s: f64) -> Result<(usize, f64)> {
        let slack = 1e-9 * self.step;
        if self.samples.len() < 2 || s < self.start() - slack || s > self.end() + slack {
            return Err(CurveError::OutOfDomain {
                s,
                start: self.start(),
                end: self.end(),
            });
        }
        Ok(self.grid().locate(s))
    }

    /// Frame at `s` by cubic Hermite interpolation with the Frenet derivatives, then reorthonormalized.
    pub fn frame_at(&self, s: f64) -> Result<FrenetFrame> {
        let (i, u) = self.locate(s)?;
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let w = hermite_weights(u);
        let h = self.step;
        let mix = |va: Vec3, da: Vec3, vb: Vec3, db: Vec3| va * w[0] + da * (w[1] * h) + vb * w[2] + db * (w[3] * h);
        let d = |p: &CurveSample| {
            let (t, n, bn) = (p.frame.tangent(), p.frame.normal(), p.frame.binormal());
            (n * p.kappa, t * -p.kappa + bn * p.tau, n * -p.tau)
        };
        let (dta, dna, dba) = d(a);
        let (dtb, dnb, dbb) = d(b);
        reorthonormalize(
            mix(a.frame.tangent(), dta, b.frame.tangent(), dtb),
            mix(a.frame.normal(), dna, b.frame.normal(), dnb),
            mix(a.frame.binormal(), dba, b.frame.binormal(), dbb),
        )
    }

    /// Position at `s` by cubic Hermite interpolation with derivative T.
    pub fn position_at(&self, s: f64) -> Result<Vec3> {
        let (i, u) = self.locate(s)?;
        let (a, b) = (&self.samples[i], &self.samples[i + 1]);
        let w = hermite_weights(u);
        let h = self.step;
        Ok(a.position * w[0] + a.frame.tangent() * (w[1] * h) + b.position * w[2] + b.frame.tangent() * (w[3] * h))
    }

    /// `(kappa, tau)` at `s` by four-point Lagrange interpolation.
    pub fn curvature_at(&self, s: f64) -> Result<(f64, f64)> {
        let (i, u) = self.locate(s)?;
        let n = self.samples.len();
        if n < 4 {
            let (a, b) = (&self.samples[i], &self.samples[i + 1]);
            return Ok((a.kappa + u * (b.kappa - a.kappa), a.tau + u * (b.tau - a.tau)));
        }
        // Stencil j-1..j+2 around the interval, shifted inward at the ends.
        let j = i.clamp(1, n - 3);
        let w = lagrange4_weights(u + (i as f64 - j as f64));
        let (mut k, mut t) = (0.0, 0.0);
        for (q, wq) in w.iter().enumerate() {
            let p = &self.samples[j + q - 1];
            k += wq * p.kappa;
            t += wq * p.tau;
        }
        Ok((k, t))
    }
}

/// Number of uniform steps covering `domain` with spacing at most `step`.
pub(crate) fn step_count(domain: Interval, step: f64) -> Result<usize> {
    if !(step.is_finite() && step > 0.0) {
        return Err(CurveError::InvalidParameter {
            name: "step",
            reason: format!("must be positive, got {step}"),
        });
    }
    if domain.is_empty() {
        return Ok(0);
    }
    let n = (domain.len() / step - 1e-9).ceil().max(1.0);
    if n > 1e8 {
        return Err(CurveError::InvalidParameter {
            name: "step",
            reason: format!("step {step} gives more than 1e8 samples"),
        });
    }
    Ok(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(h: f64, n: usize) -> SampledCurve {
        let samples = (0..n)
            .map(|i| {
                let s = i as f64 * h;
                let (sn, cs) = s.sin_cos();
                CurveSample {
                    s,
                    position: Vec3::new(sn, -cs, 0.0),
                    frame: FrenetFrame::new(Vec3::new(cs, sn, 0.0), Vec3::new(-sn, cs, 0.0), Vec3::z()).unwrap(),
                    kappa: 1.0,
                    tau: 0.0,
                }
            })
            .collect();
        SampledCurve::new(h, samples, Provenance::ClosedForm).unwrap()
    }

    #[test]
    fn rejects_irregular_spacing() {
        let mut c = circle(0.1, 5).samples().to_vec();
        c[3].s += 1e-6;
        assert!(matches!(
            SampledCurve::new(0.1, c, Provenance::External),
            Err(CurveError::NonUniformGrid { index: 3 })
        ));
    }

    #[test]
    fn interpolation_is_fourth_order_accurate() {
        let c = circle(0.01, 200);
        let s = 0.8537;
        let (sn, cs) = f64::sin_cos(s);
        let e = (c.frame_at(s).unwrap().tangent() - Vec3::new(cs, sn, 0.0)).norm();
        assert!(e < 1e-10, "{e}");
        assert!((c.frame_at(s).unwrap().tangent() - Vec3::new(cs, sn, 0.0)).norm() < 1e-10);
        let (k, t) = c.curvature_at(s).unwrap();
        assert!((k - 1.0).abs() < 1e-14 && t == 0.0);
        assert!(c.frame_at(3.0).is_err());
    }

    #[test]
    fn straight_line_samples() {
        let l = SampledCurve::straight_line(Vec3::zeros(), Vec3::new(0.0, 3.0, 4.0), Interval::new(0.0, 1.0).unwrap(), 0.3)
            .unwrap();
        assert_eq!(l.len(), 5);
        assert!((l.step() - 0.25).abs() < 1e-15);
        assert!((l.samples()[4].position - Vec3::new(0.0, 0.6, 0.8)).norm() < 1e-15);
    }
}
