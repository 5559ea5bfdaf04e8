//! Intrinsic data: curvature and torsion as fields over an arclength interval.

mod expr;
mod field;

pub use expr::{Expr, ExprError, Func};
pub use field::{ScalarField, Sign};

use std::f64::consts::FRAC_PI_2;

use crate::error::{CurveError, Result};
use crate::quadrature::{simpson_richardson, FIELD_TOLERANCE};

/// Curvature values in `[-KAPPA_TOLERANCE, 0)` are treated as zero.
pub const KAPPA_TOLERANCE: f64 = 1e-12;

const VALIDATION_PANELS: usize = 2048;

/// Closed arclength interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

impl Interval {
    /// `start == end` is accepted and denotes a single point.
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || start > end {
            return Err(CurveError::InvalidDomain { start, end });
        }
        Ok(Interval { start, end })
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    fn slack(&self) -> f64 {
        1e-12 * self.start.abs().max(self.end.abs()).max(1.0)
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.start - self.slack() && s <= self.end + self.slack()
    }

    pub(crate) fn check(&self, s: f64) -> Result<f64> {
        if self.contains(s) {
            Ok(s.clamp(self.start, self.end))
        } else {
            Err(CurveError::OutOfDomain {
                s,
                start: self.start,
                end: self.end,
            })
        }
    }

    /// `count + 1` equally spaced points covering the interval.
    pub fn grid(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let h = self.len() / count.max(1) as f64;
        (0..=count).map(move |i| if i == count { self.end } else { self.start + i as f64 * h })
    }
}

/// Curvature and torsion over an arclength interval.
///
/// Either the curvature vanishes identically (a straight line, torsion is
/// then ignored) or it is strictly positive on the open interior.
#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicProfile {
    kappa: ScalarField,
    tau: ScalarField,
    domain: Interval,
    straight: bool,
}

impl IntrinsicProfile {
    pub fn new(kappa: ScalarField, tau: ScalarField, domain: Interval) -> Result<Self> {
        let count = if domain.is_empty() { 0 } else { VALIDATION_PANELS };
        let mut straight = true;
        let mut zero_inside = None;
        for (i, s) in domain.grid(count).enumerate() {
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
            if k > KAPPA_TOLERANCE {
                straight = false;
            } else if i > 0 && i < count && zero_inside.is_none() {
                zero_inside = Some(s);
            }
        }
        if !straight {
            if let Some(s) = zero_inside {
                return Err(CurveError::CurvatureVanishes { s });
            }
            if let Some(s) = domain.grid(count).find(|&s| !tau.eval(s).is_finite()) {
                return Err(CurveError::InvalidParameter {
                    name: "tau",
                    reason: format!("torsion is not finite at s = {s}"),
                });
            }
        }
        Ok(IntrinsicProfile {
            kappa,
            tau,
            domain,
            straight,
        })
    }

    pub fn kappa(&self) -> &ScalarField {
        &self.kappa
    }

    pub fn tau(&self) -> &ScalarField {
        &self.tau
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// True when curvature vanishes identically.
    pub fn is_straight(&self) -> bool {
        self.straight
    }

    /// `(kappa(s), tau(s))`; `(0, 0)` for straight-line profiles.
    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        let s = self.domain.check(s)?;
        if self.straight {
            return Ok((0.0, 0.0));
        }
        let k = self.kappa.eval(s);
        if k < -KAPPA_TOLERANCE {
            return Err(CurveError::NegativeCurvature { s, value: k });
        }
        Ok((k.max(0.0), self.tau.eval(s)))
    }

    /// Total curvature `int_{s0}^{s1} kappa ds` by Richardson-refined composite Simpson.
    pub fn total_curvature(&self, s0: f64, s1: f64) -> Result<f64> {
        let a = self.domain.check(s0)?;
        let b = self.domain.check(s1)?;
        if b < a {
            return Err(CurveError::InvalidParameter {
                name: "s1",
                reason: format!("upper limit {s1} precedes lower limit {s0}"),
            });
        }
        if self.straight || a == b {
            return Ok(0.0);
        }
        Ok(simpson_richardson(|s| self.kappa.eval(s).max(0.0), a, b, FIELD_TOLERANCE))
    }

    /// `tau / kappa` at `s`.
    pub fn ratio(&self, s: f64) -> Result<f64> {
        let (k, t) = self.eval(s)?;
        Ok(t / k)
    }
}

/// Torsion field making `kappa` a slant helix:
/// `tau = sign * kappa * m theta / sqrt(1 - m^2 theta^2)` with `theta` anchored at `domain.start`.
pub fn slant_torsion_from_curvature(
    kappa: &ScalarField,
    m: f64,
    sign: Sign,
    domain: Interval,
) -> Result<ScalarField> {
    let field = ScalarField::slant_torsion(kappa.clone(), m, sign, domain.start)?;
    let reach = |s: f64| m * kappa.integral(domain.start, s).abs();
    let count = if domain.is_empty() { 0 } else { VALIDATION_PANELS };
    let mut prev = domain.start;
    for s in domain.grid(count) {
        if reach(s) >= 1.0 {
            // Bisect for the first point where |m theta| reaches 1.
            let (mut lo, mut hi) = (prev, s);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if reach(mid) >= 1.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Err(CurveError::DomainViolation {
                at: hi,
                reason: format!("|m * theta| reaches 1 (m = {m})"),
            });
        }
        prev = s;
    }
    Ok(field)
}

/// Parameters of a curve of constant precession.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecessionParams {
    mu: f64,
    m: f64,
    phase_swapped: bool,
}

impl PrecessionParams {
    pub fn new(mu: f64, m: f64, phase_swapped: bool) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(CurveError::InvalidParameter {
                name: "mu",
                reason: format!("must be positive, got {mu}"),
            });
        }
        if !(m.is_finite() && m > 0.0) {
            return Err(CurveError::InvalidParameter {
                name: "m",
                reason: format!("must be positive, got {m}"),
            });
        }
        Ok(PrecessionParams {
            mu,
            m,
            phase_swapped,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn phase_swapped(&self) -> bool {
        self.phase_swapped
    }
}

/// `kappa = (mu/m) sin(mu s)`, `tau = (mu/m) cos(mu s)` (or with sine and cosine swapped).
pub fn precession_profile(params: PrecessionParams, domain: Interval) -> Result<IntrinsicProfile> {
    let amp = params.mu / params.m;
    let (kappa_phase, tau_phase) = if params.phase_swapped {
        (FRAC_PI_2, 0.0)
    } else {
        (0.0, FRAC_PI_2)
    };
    let kappa = ScalarField::sinusoid(0.0, amp, params.mu, kappa_phase)?;
    let tau = ScalarField::sinusoid(0.0, amp, params.mu, tau_phase)?;
    let count = if domain.is_empty() { 0 } else { VALIDATION_PANELS };
    if let Some(s) = domain.grid(count).find(|&s| kappa.eval(s) < -KAPPA_TOLERANCE) {
        return Err(CurveError::DomainViolation {
            at: s,
            reason: "precession curvature changes sign".into(),
        });
    }
    IntrinsicProfile::new(kappa, tau, domain).map_err(|e| match e {
        CurveError::CurvatureVanishes { s } => CurveError::DomainViolation {
            at: s,
            reason: "precession curvature vanishes inside the domain".into(),
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn constant_profile(k: f64, t: f64, a: f64, b: f64) -> IntrinsicProfile {
        IntrinsicProfile::new(ScalarField::constant(k), ScalarField::constant(t), Interval::new(a, b).unwrap())
            .unwrap()
    }

    /// Adaptive Gauss–Legendre (5 point) with interval bisection; test-only oracle.
    fn gauss_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        const X: [f64; 5] = [
            0.0,
            -0.538_469_310_105_683_1,
            0.538_469_310_105_683_1,
            -0.906_179_845_938_664,
            0.906_179_845_938_664,
        ];
        const W: [f64; 5] = [
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
            0.236_926_885_056_189_1,
        ];
        let gl = |a: f64, b: f64| {
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a);
            r * X.iter().zip(W).map(|(x, w)| w * f(c + r * x)).sum::<f64>()
        };
        fn rec(gl: &dyn Fn(f64, f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (l, r) = (gl(a, m), gl(m, b));
            if depth > 40 || (l + r - whole).abs() < tol {
                l + r
            } else {
                rec(gl, a, m, l, tol / 2.0, depth + 1) + rec(gl, m, b, r, tol / 2.0, depth + 1)
            }
        }
        rec(&gl, a, b, gl(a, b), tol, 0)
    }

    #[test]
    fn constant_profile_evaluates() {
        let p = constant_profile(1.0, 0.0, 0.0, 1.0);
        assert_eq!(p.eval(0.7).unwrap(), (1.0, 0.0));
        assert!(matches!(p.eval(1.5), Err(CurveError::OutOfDomain { .. })));
    }

    #[test]
    fn salkowski_profile_at_origin() {
        let n: f64 = 0.8;
        let m = n / (1.0 - n * n).sqrt();
        let domain = Interval::new(0.0, 0.7).unwrap();
        let kappa = ScalarField::constant(1.0);
        let tau = slant_torsion_from_curvature(&kappa, m, Sign::Plus, domain).unwrap();
        let p = IntrinsicProfile::new(kappa, tau, domain).unwrap();
        assert_eq!(p.eval(0.0).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn precession_profile_values() {
        let p = precession_profile(PrecessionParams::new(1.0, 1.0, false).unwrap(), Interval::new(0.0, PI).unwrap())
            .unwrap();
        let (k, t) = p.eval(PI / 2.0).unwrap();
        assert!((k - 1.0).abs() < 1e-15 && t.abs() < 1e-15);

        let wide = precession_profile(PrecessionParams::new(1.0, 1.0, false).unwrap(), Interval::new(0.0, 2.0 * PI).unwrap());
        assert!(matches!(wide, Err(CurveError::DomainViolation { .. })));

        let p = precession_profile(PrecessionParams::new(2.0, 0.5, false).unwrap(), Interval::new(0.0, 1.5).unwrap())
            .unwrap();
        assert!((p.eval(PI / 4.0).unwrap().0 - 4.0).abs() < 1e-14);

        let swapped = precession_profile(PrecessionParams::new(1.0, 2.0, true).unwrap(), Interval::new(0.0, 1.5).unwrap())
            .unwrap();
        let (k, t) = swapped.eval(0.3).unwrap();
        assert!((k - 0.5 * 0.3f64.cos()).abs() < 1e-15 && (t - 0.5 * 0.3f64.sin()).abs() < 1e-15);
        assert!(PrecessionParams::new(0.0, 1.0, false).is_err());
        assert!(PrecessionParams::new(1.0, -1.0, false).is_err());
    }

    #[test]
    fn total_curvature_examples() {
        let p = constant_profile(1.0, 0.0, 0.0, 2.0);
        assert_eq!(p.total_curvature(0.0, 2.0).unwrap(), 2.0);
        assert_eq!(p.total_curvature(0.5, 0.5).unwrap(), 0.0);

        let lin = IntrinsicProfile::new(
            ScalarField::polynomial(vec![0.0, 1.0]),
            ScalarField::zero(),
            Interval::new(0.0, 2.0).unwrap(),
        )
        .unwrap();
        assert!((lin.total_curvature(0.0, 2.0).unwrap() - 2.0).abs() < 1e-14);

        let sine = IntrinsicProfile::new(
            ScalarField::sinusoid(2.0, 1.0, 1.0, 0.0).unwrap(),
            ScalarField::zero(),
            Interval::new(0.0, PI).unwrap(),
        )
        .unwrap();
        let oracle = gauss_adaptive(&|s: f64| 2.0 + s.sin(), 0.0, PI, 1e-15);
        assert!((sine.total_curvature(0.0, PI).unwrap() - oracle).abs() < 1e-12);
        assert!(sine.total_curvature(1.0, 0.5).is_err());
        assert!(sine.total_curvature(0.0, 4.0).is_err());
    }

    #[test]
    fn slant_torsion_domain_guard() {
        let kappa = ScalarField::constant(1.0);
        let err = slant_torsion_from_curvature(&kappa, 1.0, Sign::Plus, Interval::new(0.0, 1.5).unwrap()).unwrap_err();
        match err {
            CurveError::DomainViolation { at, .. } => assert!((at - 1.0).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn profile_construction_guards() {
        let d = Interval::new(0.0, 1.0).unwrap();
        let neg = IntrinsicProfile::new(ScalarField::polynomial(vec![-0.5, 1.0]), ScalarField::zero(), d);
        assert!(matches!(neg, Err(CurveError::NegativeCurvature { .. })));
        let dip = IntrinsicProfile::new(ScalarField::polynomial(vec![0.25, -1.0, 1.0]), ScalarField::zero(), d);
        assert!(matches!(dip, Err(CurveError::CurvatureVanishes { .. })));
        // Zero at an endpoint is allowed.
        assert!(IntrinsicProfile::new(ScalarField::polynomial(vec![0.0, 1.0]), ScalarField::zero(), d).is_ok());
        // Tiny negative noise is clamped.
        let noisy = IntrinsicProfile::new(ScalarField::constant(-1e-13), ScalarField::constant(3.0), d).unwrap();
        assert!(noisy.is_straight());
        assert_eq!(noisy.eval(0.5).unwrap(), (0.0, 0.0));
        assert!(Interval::new(1.0, 0.0).is_err());
    }

    #[test]
    fn table_profile_hits_knots() {
        let knots = vec![0.0, 0.3, 0.9, 1.0];
        let values = vec![1.0, 1.4, 0.6, 0.8];
        let p = IntrinsicProfile::new(
            ScalarField::table(knots.clone(), values.clone()).unwrap(),
            ScalarField::zero(),
            Interval::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        for (s, k) in knots.iter().zip(values) {
            assert_eq!(p.eval(*s).unwrap().0, k);
        }
    }

    proptest! {
        #[test]
        fn total_curvature_is_additive(
            c0 in 0.5f64..2.0, amp in 0.0f64..0.4, freq in 0.1f64..3.0,
            a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0,
        ) {
            let mut xs = [a * 3.0, b * 3.0, c * 3.0];
            xs.sort_by(f64::total_cmp);
            let p = IntrinsicProfile::new(
                ScalarField::sinusoid(c0, amp, freq, 0.3).unwrap(),
                ScalarField::zero(),
                Interval::new(0.0, 3.0).unwrap(),
            ).unwrap();
            let whole = p.total_curvature(xs[0], xs[2]).unwrap();
            let parts = p.total_curvature(xs[0], xs[1]).unwrap() + p.total_curvature(xs[1], xs[2]).unwrap();
            prop_assert!((whole - parts).abs() < 1e-12);
            prop_assert!(p.total_curvature(xs[0], xs[1]).unwrap() <= whole + 1e-15);
        }

        #[test]
        fn slant_torsion_satisfies_defining_identity(
            c0 in 0.5f64..1.5, amp in 0.0f64..0.4, m in 0.1f64..1.0, frac in 0.0f64..1.0,
        ) {
            let kappa = ScalarField::sinusoid(c0, amp, 1.7, 0.0).unwrap();
            // Keep |m theta| < 1: theta <= (c0 + amp) * len.
            let len = 0.95 / (m * (c0 + amp));
            let domain = Interval::new(0.0, len).unwrap();
            let tau = slant_torsion_from_curvature(&kappa, m, Sign::Plus, domain).unwrap();
            let s = frac * len;
            let theta = kappa.integral(0.0, s);
            let r = tau.eval(s) / kappa.eval(s);
            let lhs = r * r * (1.0 - m * m * theta * theta);
            prop_assert!((lhs - m * m * theta * theta).abs() < 1e-10);
        }

        #[test]
        fn evaluation_is_finite_inside_domain(
            c0 in 0.2f64..2.0, amp in 0.0f64..0.19, t0 in -2.0f64..2.0, frac in 0.0f64..1.0,
        ) {
            let p = IntrinsicProfile::new(
                ScalarField::sinusoid(c0, amp, 2.0, 1.0).unwrap(),
                ScalarField::polynomial(vec![t0, 0.5, -0.25]),
                Interval::new(-1.0, 2.0).unwrap(),
            ).unwrap();
            let (k, t) = p.eval(-1.0 + 3.0 * frac).unwrap();
            prop_assert!(k.is_finite() && t.is_finite() && k >= 0.0);
            let again = p.eval(-1.0 + 3.0 * frac).unwrap();
            prop_assert_eq!(k.to_bits(), again.0.to_bits());
        }
    }
}
