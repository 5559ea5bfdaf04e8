use crate::error::{CurveError, Result};
use crate::frenet::{reorthonormalize, FrenetFrame, SampledCurve};
use crate::Vec3;

/// Estimated curvature below which a sample carries no frame.
pub const CURVATURE_FLOOR: f64 = 1e-8;

/// Frenet data recovered at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameEstimate {
    pub s: f64,
    pub frame: FrenetFrame,
    pub kappa: f64,
    pub tau: f64,
}

/// Why a sample has no estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateFlag {
    /// Too close to an end for the five-point stencil.
    Boundary,
    CurvatureTooSmall,
}

/// Per-sample finite-difference Frenet estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetEstimate {
    step: f64,
    entries: Vec<std::result::Result<FrameEstimate, EstimateFlag>>,
}

impl FrenetEstimate {
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn entries(&self) -> &[std::result::Result<FrameEstimate, EstimateFlag>] {
        &self.entries
    }

    /// Estimates at unflagged samples, in order.
    pub fn valid(&self) -> impl Iterator<Item = &FrameEstimate> {
        self.entries.iter().filter_map(|e| e.as_ref().ok())
    }

    pub fn flagged(&self, flag: EstimateFlag) -> usize {
        self.entries.iter().filter(|e| **e == Err(flag)).count()
    }
}

/// Raw derivative data at one interior node.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Raw {
    pub d1: Vec3,
    pub d2: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

impl Raw {
    pub(crate) fn frame(&self) -> Option<FrenetFrame> {
        if !(self.kappa >= CURVATURE_FLOOR) {
            return None;
        }
        let t = self.d1.normalize();
        let b = self.d1.cross(&self.d2).normalize();
        reorthonormalize(t, b.cross(&t), b).ok()
    }
}

/// Second-order central differences at node `i` (needs `2 <= i < len - 2`).
pub(crate) fn raw_at(p: &[Vec3], i: usize, h: f64) -> Raw {
    let d1 = (p[i + 1] - p[i - 1]) / (2.0 * h);
    let d2 = (p[i + 1] - p[i] * 2.0 + p[i - 1]) / (h * h);
    let d3 = (p[i + 2] - p[i + 1] * 2.0 + p[i - 1] * 2.0 - p[i - 2]) / (2.0 * h * h * h);
    from_derivatives(d1, d2, d3)
}

/// Fourth-order central differences at node `i` (needs `3 <= i < len - 3`).
pub(crate) fn raw_at4(p: &[Vec3], i: usize, h: f64) -> Raw {
    let d1 = (p[i - 2] - p[i + 2] + (p[i + 1] - p[i - 1]) * 8.0) / (12.0 * h);
    let d2 = ((p[i + 1] + p[i - 1]) * 16.0 - p[i + 2] - p[i - 2] - p[i] * 30.0) / (12.0 * h * h);
    let d3 = (p[i - 3] - p[i + 3] + (p[i + 2] - p[i - 2]) * 8.0 + (p[i - 1] - p[i + 1]) * 13.0) / (8.0 * h * h * h);
    from_derivatives(d1, d2, d3)
}

fn from_derivatives(d1: Vec3, d2: Vec3, d3: Vec3) -> Raw {
    let c = d1.cross(&d2);
    let c2 = c.norm_squared();
    let speed = d1.norm();
    Raw {
        d1,
        d2,
        kappa: c2.sqrt() / (speed * speed * speed),
        tau: if c2 > 0.0 { c.dot(&d3) / c2 } else { 0.0 },
    }
}

/// `kappa = |psi' x psi''| / |psi'|^3`, `tau = det(psi', psi'', psi''') / |psi' x psi''|^2`
/// from second-order central differences; the two samples at each end are flagged.
pub fn estimate_frames(curve: &SampledCurve) -> Result<FrenetEstimate> {
    let n = curve.len();
    if n < 7 {
        return Err(CurveError::TooFewSamples { needed: 7, got: n });
    }
    let p = curve.positions();
    let h = curve.step();
    let entries: Vec<_> = (0..n)
        .map(|i| {
            if i < 2 || i + 2 >= n {
                return Err(EstimateFlag::Boundary);
            }
            let raw = raw_at(&p, i, h);
            match raw.frame() {
                Some(frame) => Ok(FrameEstimate {
                    s: curve.samples()[i].s,
                    frame,
                    kappa: raw.kappa,
                    tau: raw.tau,
                }),
                None => Err(EstimateFlag::CurvatureTooSmall),
            }
        })
        .collect();
    if entries.iter().all(|e| e.is_err()) {
        return Err(CurveError::CurvatureTooSmall);
    }
    Ok(FrenetEstimate { step: h, entries })
}
