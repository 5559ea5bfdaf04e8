//! Variable transformations between arclengths and the similarity relation.
//!
//! Convention: `lambda = ds_alpha / ds_beta`, a positive field over the
//! arclength of curve beta, and `s_alpha(s_beta) = s_alpha0 + int lambda`.

use nalgebra::Matrix3;

use crate::error::{CurveError, Result};
use crate::frenet::SampledCurve;
use crate::interp::{hermite_weights, MonotoneCubic};
use crate::profiles::{Interval, IntrinsicProfile, ScalarField};
use crate::quadrature::cumulative;

const TABLE_STEP: f64 = 1e-3;
const MIN_NODES: usize = 64;
const MAX_NODES: usize = 1 << 16;

fn table_nodes(domain: Interval) -> Result<(usize, f64)> {
    if domain.is_empty() {
        return Err(CurveError::InvalidDomain {
            start: domain.start,
            end: domain.end,
        });
    }
    let n = ((domain.len() / TABLE_STEP).ceil() as usize).clamp(MIN_NODES, MAX_NODES);
    Ok((n, domain.len() / n as f64))
}

fn slack(x: f64) -> f64 {
    1e-12 * x.abs().max(1.0)
}

/// Monotone reparameterization `s_alpha(s_beta)` with rate `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableTransformation {
    lambda: ScalarField,
    beta: Interval,
    alpha: Interval,
    forward: MonotoneCubic,
    inverse: MonotoneCubic,
}

impl VariableTransformation {
    /// Tabulates `s_alpha = alpha_start + int_{beta.start}^{s_beta} lambda`.
    pub fn from_lambda(lambda: ScalarField, beta: Interval, alpha_start: f64) -> Result<Self> {
        let (n, h) = table_nodes(beta)?;
        let knots: Vec<f64> = (0..=n).map(|i| if i == n { beta.end } else { beta.start + i as f64 * h }).collect();
        let mut slopes = Vec::with_capacity(n + 1);
        for &s in &knots {
            let v = lambda.eval(s);
            if !(v > 0.0 && v.is_finite()) {
                return Err(CurveError::NonPositiveLambda { s, value: v });
            }
            slopes.push(v);
        }
        let mut values = Vec::with_capacity(n + 1);
        let mut acc = alpha_start;
        values.push(acc);
        for w in knots.windows(2) {
            acc += lambda.integral(w[0], w[1]);
            values.push(acc);
        }
        Self::from_table(lambda, knots, values, slopes)
    }

    fn from_table(lambda: ScalarField, knots: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        let forward = MonotoneCubic::with_slopes(knots, values, slopes)?;
        let inverse = forward.inverse()?;
        Ok(VariableTransformation {
            lambda,
            beta: Interval::new(forward.first_knot(), forward.last_knot())?,
            alpha: Interval::new(inverse.first_knot(), inverse.last_knot())?,
            forward,
            inverse,
        })
    }

    /// `lambda = 1` on `domain`.
    pub fn identity(domain: Interval) -> Result<Self> {
        Self::from_lambda(ScalarField::constant(1.0), domain, domain.start)
    }

    pub fn lambda(&self) -> &ScalarField {
        &self.lambda
    }

    pub fn beta_domain(&self) -> Interval {
        self.beta
    }

    /// Image of the beta domain.
    pub fn alpha_domain(&self) -> Interval {
        self.alpha
    }

    /// The correspondence table `s_beta -> s_alpha`.
    pub fn table(&self) -> &MonotoneCubic {
        &self.forward
    }

    /// `s_alpha(s_beta)`.
    pub fn correspond(&self, s_beta: f64) -> Result<f64> {
        Ok(self.forward.eval(self.beta.check(s_beta)?))
    }

    /// `s_beta(s_alpha)`.
    pub fn correspond_inverse(&self, s_alpha: f64) -> Result<f64> {
        Ok(self.inverse.eval(self.alpha.check(s_alpha)?))
    }

    /// Transformation in the opposite direction, rate `1 / lambda(s_beta(s_alpha))`.
    pub fn inverse(&self) -> VariableTransformation {
        let lambda = ScalarField::quotient(
            ScalarField::constant(1.0),
            ScalarField::composed(self.lambda.clone(), self.inverse.clone()),
        );
        VariableTransformation {
            lambda,
            beta: self.alpha,
            alpha: self.beta,
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// Transformation with `lambda = kappa_beta(s_beta) / kappa_alpha(s_alpha(s_beta))`,
/// obtained by integrating `ds_alpha / ds_beta = lambda` with RK4 from `alpha_domain.start`.
pub fn make_transformation(
    kappa_alpha: &ScalarField,
    alpha_domain: Interval,
    kappa_beta: &ScalarField,
    beta_domain: Interval,
) -> Result<VariableTransformation> {
    let (n, h) = table_nodes(beta_domain)?;
    let knots: Vec<f64> =
        (0..=n).map(|i| if i == n { beta_domain.end } else { beta_domain.start + i as f64 * h }).collect();
    for &s in &knots {
        let k = kappa_beta.eval(s);
        if !(k > 0.0) {
            return Err(CurveError::NonPositiveCurvature { s, value: k });
        }
    }
    let alpha_end = alpha_domain.end + slack(alpha_domain.end);
    let rate = |x: f64, y: f64| -> Result<f64> {
        let k = kappa_alpha.eval(y);
        if k > 0.0 {
            Ok(kappa_beta.eval(x) / k)
        } else if y > alpha_end {
            Err(CurveError::DomainExhausted { at: x })
        } else {
            Err(CurveError::NonPositiveCurvature { s: y, value: k })
        }
    };
    let mut values = vec![alpha_domain.start];
    let mut slopes = vec![rate(knots[0], alpha_domain.start)?];
    for i in 0..n {
        let (x, y) = (knots[i], values[i]);
        let dx = knots[i + 1] - x;
        let k1 = slopes[i];
        let k2 = rate(x + dx / 2.0, y + dx / 2.0 * k1)?;
        let k3 = rate(x + dx / 2.0, y + dx / 2.0 * k2)?;
        let k4 = rate(x + dx, y + dx * k3)?;
        let next = y + dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if next > alpha_end {
            let at = x + dx * (alpha_domain.end - y) / (next - y);
            return Err(CurveError::DomainExhausted { at });
        }
        values.push(next);
        slopes.push(rate(knots[i + 1], next)?);
    }
    let forward = MonotoneCubic::with_slopes(knots.clone(), values.clone(), slopes.clone())?;
    let lambda = ScalarField::quotient(kappa_beta.clone(), ScalarField::composed(kappa_alpha.clone(), forward));
    VariableTransformation::from_table(lambda, knots, values, slopes)
}

/// Smallest `b` with `int_{beta_start}^{b} lambda = alpha_domain.len()`.
pub fn partner_domain(lambda: &ScalarField, alpha_domain: Interval, beta_start: f64) -> Result<Interval> {
    let target = alpha_domain.len();
    let reach = |b: f64| lambda.integral(beta_start, b);
    let mut width = target.max(1e-3);
    while reach(beta_start + width) < target {
        width *= 2.0;
        if width > 1e9 || !width.is_finite() {
            return Err(CurveError::InvalidParameter {
                name: "lambda",
                reason: "integral of lambda does not reach the alpha length".into(),
            });
        }
    }
    let (mut lo, mut hi) = (0.0, width);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if reach(beta_start + mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Interval::new(beta_start, beta_start + lo)
}

/// Profile beta with `kappa_beta = kappa_alpha(s_alpha(s_beta)) lambda`, `tau_beta = tau_alpha(...) lambda`,
/// together with the transformation used.
pub fn similar_partner(
    alpha: &IntrinsicProfile,
    lambda: ScalarField,
    beta_domain: Interval,
) -> Result<(IntrinsicProfile, VariableTransformation)> {
    let t = VariableTransformation::from_lambda(lambda, beta_domain, alpha.domain().start)?;
    let alpha_end = alpha.domain().end;
    if t.alpha_domain().end > alpha_end + slack(alpha_end) {
        let at = t.inverse.eval(alpha_end);
        return Err(CurveError::DomainExhausted { at });
    }
    let (kappa, tau) = if alpha.is_straight() {
        (ScalarField::zero(), ScalarField::zero())
    } else {
        (
            ScalarField::transported(alpha.kappa().clone(), t.lambda.clone(), t.forward.clone()),
            ScalarField::transported(alpha.tau().clone(), t.lambda.clone(), t.forward.clone()),
        )
    };
    Ok((IntrinsicProfile::new(kappa, tau, beta_domain)?, t))
}

/// Acceptance thresholds for [`check_similar`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityTolerances {
    /// Frame vector deviation.
    pub frame: f64,
    /// `|tau/kappa|` deviation.
    pub ratio: f64,
    /// Total-curvature deviation.
    pub theta: f64,
}

impl Default for SimilarityTolerances {
    fn default() -> Self {
        SimilarityTolerances {
            frame: 1e-4,
            ratio: 1e-6,
            theta: 1e-6,
        }
    }
}

/// One verdict per predicate; `overall` is their conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityVerdict {
    pub tangent: bool,
    pub normal: bool,
    pub binormal: bool,
    /// Equal `tau/kappa` at equal total curvature.
    pub ratio: bool,
    pub overall: bool,
}

impl SimilarityVerdict {
    /// True when the four predicates agree.
    pub fn consistent(&self) -> bool {
        self.tangent == self.normal && self.normal == self.binormal && self.binormal == self.ratio
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub tangent_dev: f64,
    pub normal_dev: f64,
    pub binormal_dev: f64,
    pub ratio_dev: f64,
    pub theta_dev: f64,
    /// Rotation applied to curve alpha before comparing frames.
    pub rotation: Matrix3<f64>,
    pub samples: usize,
    pub verdict: SimilarityVerdict,
}

fn require_frames(curve: &SampledCurve, name: &str) -> Result<()> {
    if curve.len() < 4 {
        return Err(CurveError::DegenerateCurve(format!("curve {name} has fewer than 4 samples")));
    }
    if let Some(p) = curve.samples().iter().find(|p| !(p.kappa > 0.0)) {
        return Err(CurveError::DegenerateCurve(format!(
            "curve {name} has non-positive curvature at s = {}",
            p.s
        )));
    }
    Ok(())
}

/// Rotation `R` minimising `|R a - b|` over proper rotations.
fn procrustes(a: &Matrix3<f64>, b: &Matrix3<f64>) -> Matrix3<f64> {
    let svd = (b * a.transpose()).svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let d = (u * v_t).determinant().signum();
    u * Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, d)) * v_t
}

/// Compares beta's samples with alpha interpolated at `s_alpha(s_beta)`.
///
/// Alpha's frames are aligned to beta's by the rotation that best maps the
/// first compared alpha frame onto beta's first frame. Total curvatures are
/// anchored at the first compared sample of each curve.
pub fn check_similar(
    alpha: &SampledCurve,
    beta: &SampledCurve,
    transformation: &VariableTransformation,
    tol: &SimilarityTolerances,
) -> Result<SimilarityReport> {
    require_frames(alpha, "alpha")?;
    require_frames(beta, "beta")?;
    let kappa_alpha: Vec<f64> = alpha.samples().iter().map(|p| p.kappa).collect();
    let kappa_beta: Vec<f64> = beta.samples().iter().map(|p| p.kappa).collect();
    let theta_alpha = cumulative(&kappa_alpha, alpha.step());
    let theta_beta = cumulative(&kappa_beta, beta.step());
    let grid = alpha.grid();
    let theta_at = |s: f64| {
        let (i, u) = grid.locate(s);
        let w = hermite_weights(u);
        let h = alpha.step();
        w[0] * theta_alpha[i] + w[1] * h * kappa_alpha[i] + w[2] * theta_alpha[i + 1] + w[3] * h * kappa_alpha[i + 1]
    };
    let slack_a = 1e-9 * alpha.step();
    let mut rotation = None;
    let mut theta0 = 0.0;
    let mut report = SimilarityReport {
        tangent_dev: 0.0,
        normal_dev: 0.0,
        binormal_dev: 0.0,
        ratio_dev: 0.0,
        theta_dev: 0.0,
        rotation: Matrix3::identity(),
        samples: 0,
        verdict: SimilarityVerdict {
            tangent: false,
            normal: false,
            binormal: false,
            ratio: false,
            overall: false,
        },
    };
    for (j, pb) in beta.samples().iter().enumerate() {
        let s_alpha = transformation
            .correspond(pb.s)
            .map_err(|_| CurveError::DomainExhausted { at: pb.s })?;
        if s_alpha < alpha.start() - slack_a || s_alpha > alpha.end() + slack_a {
            return Err(CurveError::DomainExhausted { at: pb.s });
        }
        let s_alpha = s_alpha.clamp(alpha.start(), alpha.end());
        let frame = alpha.frame_at(s_alpha)?;
        let (ka, ta) = alpha.curvature_at(s_alpha)?;
        let theta = theta_at(s_alpha);
        let r = *rotation.get_or_insert_with(|| {
            theta0 = theta;
            procrustes(&frame.matrix(), &pb.frame.matrix())
        });
        let fa = frame.rotated(&r);
        report.tangent_dev = report.tangent_dev.max((pb.frame.tangent() - fa.tangent()).norm());
        report.normal_dev = report.normal_dev.max((pb.frame.normal() - fa.normal()).norm());
        report.binormal_dev = report.binormal_dev.max((pb.frame.binormal() - fa.binormal()).norm());
        report.ratio_dev = report.ratio_dev.max((pb.tau / pb.kappa - ta / ka).abs());
        report.theta_dev = report.theta_dev.max((theta_beta[j] - (theta - theta0)).abs());
        report.samples += 1;
    }
    report.rotation = rotation.unwrap_or_else(Matrix3::identity);
    let tangent = report.tangent_dev < tol.frame;
    let normal = report.normal_dev < tol.frame;
    let binormal = report.binormal_dev < tol.frame;
    let ratio = report.ratio_dev < tol.ratio && report.theta_dev < tol.theta;
    report.verdict = SimilarityVerdict {
        tangent,
        normal,
        binormal,
        ratio,
        overall: tangent && normal && binormal && ratio,
    };
    Ok(report)
}
