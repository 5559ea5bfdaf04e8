use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::error::{CurveError, Result};
use crate::frenet::{FrenetFrame, SampledCurve};
use crate::Vec3;

use super::estimate::{raw_at4, CURVATURE_FLOOR};

/// Curve classes recognised by [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveClass {
    StraightLine,
    PlaneCurve,
    CircularHelix,
    GeneralHelix,
    SlantHelix,
    Salkowski,
    AntiSalkowski,
    ConstantPrecession,
    Generic,
}

impl CurveClass {
    pub const ALL: [CurveClass; 9] = [
        CurveClass::StraightLine,
        CurveClass::PlaneCurve,
        CurveClass::CircularHelix,
        CurveClass::GeneralHelix,
        CurveClass::SlantHelix,
        CurveClass::Salkowski,
        CurveClass::AntiSalkowski,
        CurveClass::ConstantPrecession,
        CurveClass::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveClass::StraightLine => "StraightLine",
            CurveClass::PlaneCurve => "PlaneCurve",
            CurveClass::CircularHelix => "CircularHelix",
            CurveClass::GeneralHelix => "GeneralHelix",
            CurveClass::SlantHelix => "SlantHelix",
            CurveClass::Salkowski => "Salkowski",
            CurveClass::AntiSalkowski => "AntiSalkowski",
            CurveClass::ConstantPrecession => "ConstantPrecession",
            CurveClass::Generic => "Generic",
        }
    }

    pub fn from_name(name: &str) -> Option<CurveClass> {
        CurveClass::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Thresholds for the constancy tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyTolerances {
    /// Relative spread below which a series counts as constant.
    pub eps_rel: f64,
    /// Absolute level below which curvature or torsion counts as zero.
    pub eps_abs: f64,
    /// Relative RMS residual accepted for the precession fit.
    pub eps_fit: f64,
    /// Target spacing of the finite-difference stencil.
    pub stencil_spacing: f64,
    /// Samples with estimated curvature below this fraction of the peak are left out of the statistics.
    pub kappa_floor_rel: f64,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        ClassifyTolerances {
            eps_rel: 1e-2,
            eps_abs: 1e-6,
            eps_fit: 1e-3,
            stencil_spacing: 1e-2,
            kappa_floor_rel: 0.05,
        }
    }
}

/// Mean, extremes and relative spread `(max - min) / max(|mean|, eps_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub spread: f64,
}

impl SeriesStats {
    pub fn of(values: &[f64], eps_abs: f64) -> Option<SeriesStats> {
        if values.is_empty() {
            return None;
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(SeriesStats {
            mean,
            min,
            max,
            spread: (max - min) / mean.abs().max(eps_abs),
        })
    }
}

/// Fixed direction with its componentwise spread across samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisEstimate {
    pub direction: Vec3,
    pub residual: f64,
}

/// Least-squares fit of `kappa = A sin(mu s + phase)`, `tau = +-A cos(mu s + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionFit {
    pub amplitude: f64,
    pub mu: f64,
    pub m: f64,
    pub phase: f64,
    /// True when `tau = -A cos(...)`, i.e. sine and cosine swapped up to a phase.
    pub phase_swapped: bool,
    /// RMS residual relative to the amplitude.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub labels: BTreeSet<CurveClass>,
    pub kappa_stats: Option<SeriesStats>,
    pub tau_stats: Option<SeriesStats>,
    pub ratio_stats: Option<SeriesStats>,
    pub sigma_stats: Option<SeriesStats>,
    pub axis: Option<AxisEstimate>,
    pub angle: Option<f64>,
    pub precession: Option<PrecessionFit>,
    /// Sample stride of the finite-difference stencil.
    pub stride: usize,
    /// Number of estimates entering the statistics.
    pub samples_used: usize,
}

impl ClassificationReport {
    pub fn has(&self, class: CurveClass) -> bool {
        self.labels.contains(&class)
    }

    fn empty(stride: usize) -> Self {
        ClassificationReport {
            labels: BTreeSet::new(),
            kappa_stats: None,
            tau_stats: None,
            ratio_stats: None,
            sigma_stats: None,
            axis: None,
            angle: None,
            precession: None,
            stride,
            samples_used: 0,
        }
    }
}

struct Node {
    s: f64,
    frame: FrenetFrame,
    kappa: f64,
    tau: f64,
}

/// Assigns curve classes from finite-difference Frenet estimates.
pub fn classify(curve: &SampledCurve, tol: &ClassifyTolerances) -> Result<ClassificationReport> {
    let n = curve.len();
    if n < 11 {
        return Err(CurveError::TooFewSamples { needed: 11, got: n });
    }
    let h = curve.step();
    let stride = ((tol.stencil_spacing / h).round() as usize).clamp(1, ((n - 1) / 10).max(1));
    let positions: Vec<Vec3> = curve.samples().iter().step_by(stride).map(|p| p.position).collect();
    let arclength: Vec<f64> = curve.samples().iter().step_by(stride).map(|p| p.s).collect();
    let hk = h * stride as f64;
    let raws: Vec<_> = (3..positions.len() - 3).map(|i| (i, raw_at4(&positions, i, hk))).collect();

    let peak = raws.iter().map(|(_, r)| r.kappa).fold(0.0, f64::max);
    let mut report = ClassificationReport::empty(stride);
    if !(peak >= tol.eps_abs) {
        report.labels.insert(CurveClass::StraightLine);
        return Ok(report);
    }
    let floor = (tol.kappa_floor_rel * peak).max(CURVATURE_FLOOR);
    let nodes: Vec<Option<Node>> = raws
        .iter()
        .map(|(i, r)| {
            if r.kappa < floor {
                return None;
            }
            r.frame().map(|frame| Node {
                s: arclength[*i],
                frame,
                kappa: r.kappa,
                tau: r.tau,
            })
        })
        .collect();
    let kept: Vec<&Node> = nodes.iter().flatten().collect();
    if kept.len() < 3 {
        report.labels.insert(CurveClass::Generic);
        return Ok(report);
    }
    report.samples_used = kept.len();

    let kappa: Vec<f64> = kept.iter().map(|v| v.kappa).collect();
    let tau: Vec<f64> = kept.iter().map(|v| v.tau).collect();
    let ratio: Vec<f64> = kept.iter().map(|v| v.tau / v.kappa).collect();
    let sigma: Vec<f64> = nodes
        .windows(5)
        .filter_map(|w| match w {
            [Some(a), Some(b), Some(c), Some(d), Some(e)] => {
                let r = |v: &Node| v.tau / v.kappa;
                let dr = (r(a) - r(e) + 8.0 * (r(d) - r(b))) / (12.0 * hk);
                Some(c.kappa * c.kappa * dr / (c.kappa * c.kappa + c.tau * c.tau).powf(1.5))
            }
            _ => None,
        })
        .collect();
    report.kappa_stats = SeriesStats::of(&kappa, tol.eps_abs);
    report.tau_stats = SeriesStats::of(&tau, tol.eps_abs);
    report.ratio_stats = SeriesStats::of(&ratio, tol.eps_abs);
    report.sigma_stats = SeriesStats::of(&sigma, tol.eps_abs);

    let constant = |st: &Option<SeriesStats>| st.is_some_and(|v| v.spread < tol.eps_rel);
    let planar = tau.iter().all(|t| t.abs() < tol.eps_abs);
    let kappa_const = constant(&report.kappa_stats);
    let tau_const = constant(&report.tau_stats);
    let labels = &mut report.labels;
    if planar {
        labels.insert(CurveClass::PlaneCurve);
    } else {
        if constant(&report.ratio_stats) {
            labels.insert(CurveClass::GeneralHelix);
            if kappa_const && tau_const {
                labels.insert(CurveClass::CircularHelix);
            }
        } else if constant(&report.sigma_stats) && report.sigma_stats.is_some_and(|v| v.mean.abs() > tol.eps_rel) {
            labels.insert(CurveClass::SlantHelix);
            if kappa_const {
                labels.insert(CurveClass::Salkowski);
            } else if tau_const {
                labels.insert(CurveClass::AntiSalkowski);
            }
        }
        let fit = fit_precession(&kept);
        if let Some(f) = fit {
            let span = kept[kept.len() - 1].s - kept[0].s;
            if f.residual < tol.eps_fit && f.mu * span > tol.eps_rel && labels.contains(&CurveClass::SlantHelix) {
                labels.insert(CurveClass::ConstantPrecession);
            }
        }
        report.precession = fit;
    }

    let general = report.labels.contains(&CurveClass::GeneralHelix);
    if general || report.labels.contains(&CurveClass::SlantHelix) {
        let sigma_bar = if general { 0.0 } else { report.sigma_stats.map_or(0.0, |v| v.mean) };
        let scale = (1.0 + sigma_bar * sigma_bar).sqrt();
        let axes: Vec<Vec3> = kept
            .iter()
            .map(|v| {
                let darboux = (v.frame.tangent() * v.tau + v.frame.binormal() * v.kappa)
                    / (v.kappa * v.kappa + v.tau * v.tau).sqrt();
                (v.frame.normal() * sigma_bar + darboux) / scale
            })
            .collect();
        let direction = (axes.iter().sum::<Vec3>() / axes.len() as f64).normalize();
        let residual = (0..3)
            .map(|c| {
                let lo = axes.iter().map(|a| a[c]).fold(f64::INFINITY, f64::min);
                let hi = axes.iter().map(|a| a[c]).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max);
        report.axis = Some(AxisEstimate { direction, residual });
        report.angle = Some(if general {
            let r = report.ratio_stats.map_or(0.0, |v| v.mean);
            f64::atan2(1.0, r)
        } else {
            let c = kept.iter().map(|v| v.frame.normal().dot(&direction)).sum::<f64>() / kept.len() as f64;
            c.clamp(-1.0, 1.0).acos()
        });
    }
    if report.labels.is_empty() {
        report.labels.insert(CurveClass::Generic);
    }
    Ok(report)
}

fn fit_precession(nodes: &[&Node]) -> Option<PrecessionFit> {
    let amp0 = nodes.iter().map(|v| v.kappa.hypot(v.tau)).sum::<f64>() / nodes.len() as f64;
    let line = |eps: f64| {
        let mut prev = 0.0;
        let mut offset = 0.0;
        let angles: Vec<f64> = nodes
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let a = f64::atan2(v.kappa, eps * v.tau);
                if i > 0 {
                    let d = a + offset - prev;
                    offset -= 2.0 * PI * (d / (2.0 * PI)).round();
                }
                prev = a + offset;
                prev
            })
            .collect();
        let n = nodes.len() as f64;
        let ms = nodes.iter().map(|v| v.s).sum::<f64>() / n;
        let ma = angles.iter().sum::<f64>() / n;
        let sxy: f64 = nodes.iter().zip(&angles).map(|(v, a)| (v.s - ms) * (a - ma)).sum();
        let sxx: f64 = nodes.iter().map(|v| (v.s - ms) * (v.s - ms)).sum();
        let mu = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        (mu, ma - mu * ms)
    };
    let (eps, (mut mu, mut phase)) = {
        let plus = line(1.0);
        if plus.0 >= 0.0 {
            (1.0, plus)
        } else {
            (-1.0, line(-1.0))
        }
    };
    let mut amp = amp0;
    let residuals = |amp: f64, mu: f64, phase: f64| -> f64 {
        nodes
            .iter()
            .map(|v| {
                let (sn, cs) = (mu * v.s + phase).sin_cos();
                (v.kappa - amp * sn).powi(2) + (eps * v.tau - amp * cs).powi(2)
            })
            .sum()
    };
    let mut cost = residuals(amp, mu, phase);
    for _ in 0..20 {
        let mut jtj = Matrix3::<f64>::zeros();
        let mut jtr = Vector3::<f64>::zeros();
        for v in nodes {
            let (sn, cs) = (mu * v.s + phase).sin_cos();
            let rows = [
                (v.kappa - amp * sn, Vector3::new(-sn, -amp * v.s * cs, -amp * cs)),
                (eps * v.tau - amp * cs, Vector3::new(-cs, amp * v.s * sn, amp * sn)),
            ];
            for (r, j) in rows {
                jtj += j * j.transpose();
                jtr += j * r;
            }
        }
        let Some(delta) = jtj.lu().solve(&(-jtr)) else { break };
        let trial = (amp + delta[0], mu + delta[1], phase + delta[2]);
        let next = residuals(trial.0, trial.1, trial.2);
        if !(next < cost) {
            break;
        }
        (amp, mu, phase) = trial;
        let done = cost - next <= 1e-15 * cost.max(1e-300);
        cost = next;
        if done {
            break;
        }
    }
    if !(amp > 0.0 && mu.is_finite()) {
        return None;
    }
    let rms = (cost / (2 * nodes.len()) as f64).sqrt();
    Some(PrecessionFit {
        amplitude: amp,
        mu,
        m: mu / amp,
        phase,
        phase_swapped: eps < 0.0,
        residual: rms / amp,
    })
}
