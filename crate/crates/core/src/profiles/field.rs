use crate::error::{CurveError, Result};
use crate::interp::MonotoneCubic;
use crate::quadrature::{simpson_richardson, FIELD_TOLERANCE};

use super::expr::{Expr, ExprError};

/// Orientation of the slant-helix torsion law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_f64(v: f64) -> Option<Sign> {
        if v == 1.0 {
            Some(Sign::Plus)
        } else if v == -1.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// A real-valued function of arclength.
///
/// Every kind is defined on the whole real line (tables extend their end
/// values); domain restrictions belong to [`IntrinsicProfile`](super::IntrinsicProfile).
/// Evaluation is pure and deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField(Kind);

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Constant(f64),
    /// Coefficients in ascending powers of `s`.
    Polynomial(Vec<f64>),
    /// `offset + amplitude * sin(frequency * s + phase)`.
    Sinusoid {
        offset: f64,
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
    Table(MonotoneCubic),
    /// `sign * kappa * m theta / sqrt(1 - m^2 theta^2)`, `theta = int_anchor^s kappa`.
    SlantTorsion {
        kappa: Box<ScalarField>,
        m: f64,
        sign: Sign,
        anchor: f64,
    },
    Quotient {
        numerator: Box<ScalarField>,
        denominator: Box<ScalarField>,
    },
    /// `base(map(s)) * lambda(s)`, where `map` is a primitive of `lambda`.
    Transported {
        base: Box<ScalarField>,
        lambda: Box<ScalarField>,
        map: MonotoneCubic,
    },
    /// `outer(map(s))`.
    Composed {
        outer: Box<ScalarField>,
        map: MonotoneCubic,
    },
    Expression(Expr),
}

impl ScalarField {
    pub fn constant(value: f64) -> Self {
        ScalarField(Kind::Constant(value))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        ScalarField(Kind::Polynomial(coefficients))
    }

    pub fn sinusoid(offset: f64, amplitude: f64, frequency: f64, phase: f64) -> Result<Self> {
        for (name, v) in [
            ("offset", offset),
            ("amplitude", amplitude),
            ("frequency", frequency),
            ("phase", phase),
        ] {
            if !v.is_finite() {
                return Err(CurveError::InvalidParameter {
                    name,
                    reason: format!("sinusoid {name} must be finite, got {v}"),
                });
            }
        }
        Ok(ScalarField(Kind::Sinusoid {
            offset,
            amplitude,
            frequency,
            phase,
        }))
    }

    /// Monotone-cubic table over strictly increasing knots.
    pub fn table(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Ok(ScalarField(Kind::Table(MonotoneCubic::new(knots, values)?)))
    }

    /// Slant-helix torsion law with total curvature anchored at `anchor`.
    ///
    /// No domain check is made here; see
    /// [`slant_torsion_from_curvature`](super::slant_torsion_from_curvature).
    pub fn slant_torsion(kappa: ScalarField, m: f64, sign: Sign, anchor: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(CurveError::InvalidParameter {
                name: "m",
                reason: format!("must be positive and finite, got {m}"),
            });
        }
        Ok(ScalarField(Kind::SlantTorsion {
            kappa: Box::new(kappa),
            m,
            sign,
            anchor,
        }))
    }

    pub fn quotient(numerator: ScalarField, denominator: ScalarField) -> Self {
        ScalarField(Kind::Quotient {
            numerator: Box::new(numerator),
            denominator: Box::new(denominator),
        })
    }

    /// `base` carried to a new arclength through the rate `lambda`.
    ///
    /// `map` must be an increasing interpolant whose derivative is `lambda`.
    pub fn transported(base: ScalarField, lambda: ScalarField, map: MonotoneCubic) -> Self {
        ScalarField(Kind::Transported {
            base: Box::new(base),
            lambda: Box::new(lambda),
            map,
        })
    }

    /// `outer(map(s))`.
    pub fn composed(outer: ScalarField, map: MonotoneCubic) -> Self {
        ScalarField(Kind::Composed {
            outer: Box::new(outer),
            map,
        })
    }

    pub fn expression(expr: Expr) -> Self {
        ScalarField(Kind::Expression(expr))
    }

    pub fn parse_expression(text: &str) -> std::result::Result<Self, ExprError> {
        Expr::parse(text).map(Self::expression)
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.0 {
            Kind::Constant(_) => "constant",
            Kind::Polynomial(_) => "polynomial",
            Kind::Sinusoid { .. } => "sinusoid",
            Kind::Table(_) => "table",
            Kind::SlantTorsion { .. } => "slant-torsion",
            Kind::Quotient { .. } => "quotient",
            Kind::Transported { .. } => "transported",
            Kind::Composed { .. } => "composed",
            Kind::Expression(_) => "expression",
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.0 {
            Kind::Constant(c) => Some(c),
            _ => None,
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match &self.0 {
            Kind::Constant(c) => *c,
            Kind::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &k| acc * s + k),
            Kind::Sinusoid {
                offset,
                amplitude,
                frequency,
                phase,
            } => offset + amplitude * (frequency * s + phase).sin(),
            Kind::Table(t) => t.eval(s),
            Kind::SlantTorsion {
                kappa,
                m,
                sign,
                anchor,
            } => {
                let x = m * kappa.integral(*anchor, s);
                sign.value() * kappa.eval(s) * x / (1.0 - x * x).sqrt()
            }
            Kind::Quotient {
                numerator,
                denominator,
            } => numerator.eval(s) / denominator.eval(s),
            Kind::Transported { base, lambda, map } => base.eval(map.eval(s)) * lambda.eval(s),
            Kind::Composed { outer, map } => outer.eval(map.eval(s)),
            Kind::Expression(e) => e.eval(s),
        }
    }

    /// `int_a^b field(s) ds`, in closed form where the kind admits one.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        match &self.0 {
            Kind::Constant(c) => c * (b - a),
            Kind::Polynomial(c) => {
                let prim = |x: f64| {
                    c.iter()
                        .enumerate()
                        .rev()
                        .fold(0.0, |acc, (k, &ck)| acc * x + ck / (k + 1) as f64)
                        * x
                };
                prim(b) - prim(a)
            }
            Kind::Sinusoid {
                offset,
                amplitude,
                frequency,
                phase,
            } => {
                if *frequency == 0.0 {
                    (offset + amplitude * phase.sin()) * (b - a)
                } else {
                    offset * (b - a)
                        - amplitude / frequency
                            * ((frequency * b + phase).cos() - (frequency * a + phase).cos())
                }
            }
            Kind::Table(t) => t.integral(a, b),
            Kind::SlantTorsion {
                kappa,
                m,
                sign,
                anchor,
            } => {
                let root = |s: f64| {
                    let x = m * kappa.integral(*anchor, s);
                    (1.0 - x * x).sqrt()
                };
                -sign.value() / m * (root(b) - root(a))
            }
            Kind::Transported { base, map, .. } => base.integral(map.eval(a), map.eval(b)),
            Kind::Quotient { .. } | Kind::Composed { .. } | Kind::Expression(_) => {
                simpson_richardson(|s| self.eval(s), a, b, FIELD_TOLERANCE)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::simpson_richardson;

    /// `0.2 + s + s^3/3` on [0, 2], the primitive of `1 + s^2`.
    fn cubic_map() -> MonotoneCubic {
        let knots: Vec<f64> = (0..=400).map(|i| i as f64 * 0.005).collect();
        let values = knots.iter().map(|s| 0.2 + s + s * s * s / 3.0).collect();
        let slopes = knots.iter().map(|s| 1.0 + s * s).collect();
        MonotoneCubic::with_slopes(knots, values, slopes).unwrap()
    }

    fn numeric(f: &ScalarField, a: f64, b: f64) -> f64 {
        simpson_richardson(|s| f.eval(s), a, b, 1e-15)
    }

    #[test]
    fn closed_form_integrals_match_quadrature() {
        let fields = vec![
            ScalarField::constant(2.5),
            ScalarField::polynomial(vec![1.0, -2.0, 0.5, 0.25]),
            ScalarField::sinusoid(2.0, 0.7, 1.3, 0.4).unwrap(),
            ScalarField::sinusoid(1.0, 0.5, 0.0, 0.3).unwrap(),
            ScalarField::table(vec![0.0, 0.5, 1.2, 2.0], vec![1.0, 2.0, 1.5, 3.0]).unwrap(),
            ScalarField::slant_torsion(ScalarField::constant(1.0), 0.4, Sign::Minus, 0.0).unwrap(),
            ScalarField::transported(
                ScalarField::sinusoid(1.0, 0.3, 2.0, 0.0).unwrap(),
                ScalarField::polynomial(vec![1.0, 0.0, 1.0]),
                cubic_map(),
            ),
        ];
        for f in &fields {
            let exact = f.integral(0.1, 1.7);
            let approx = numeric(f, 0.1, 1.7);
            assert!((exact - approx).abs() < 1e-10, "{}: {exact} vs {approx}", f.kind_name());
        }
    }

    #[test]
    fn slant_torsion_matches_salkowski_form() {
        let m = 4.0 / 3.0;
        let f = ScalarField::slant_torsion(ScalarField::constant(1.0), m, Sign::Plus, 0.0).unwrap();
        assert_eq!(f.eval(0.0), 0.0);
        for &u in &[0.1, 0.3, 0.6, 0.7] {
            let expected = m * u / (1.0 - m * m * u * u).sqrt();
            assert!((f.eval(u) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn transported_composes_base_with_correspondence() {
        // lambda = 2: map(s) = 1 + 2s, so value = base(1 + 2s) * 2.
        let map = MonotoneCubic::with_slopes(vec![0.0, 1.0], vec![1.0, 3.0], vec![2.0, 2.0]).unwrap();
        let f = ScalarField::transported(ScalarField::polynomial(vec![0.0, 1.0]), ScalarField::constant(2.0), map.clone());
        assert!((f.eval(0.25) - 3.0).abs() < 1e-15);
        assert!((f.integral(0.0, 0.5) - 1.5).abs() < 1e-15);
        let g = ScalarField::composed(ScalarField::polynomial(vec![0.0, 0.0, 1.0]), map);
        assert!((g.eval(0.5) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn quotient_and_expression() {
        let q = ScalarField::quotient(ScalarField::constant(3.0), ScalarField::polynomial(vec![1.0, 1.0]));
        assert_eq!(q.eval(2.0), 1.0);
        assert!((q.integral(0.0, 1.0) - 3.0 * 2f64.ln()).abs() < 1e-13);
        let e = ScalarField::parse_expression("1+s^2").unwrap();
        assert!((e.integral(0.0, 1.0) - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn sinusoid_rejects_non_finite() {
        assert!(ScalarField::sinusoid(0.0, f64::NAN, 1.0, 0.0).is_err());
        assert!(ScalarField::sinusoid(0.0, 1.0, f64::INFINITY, 0.0).is_err());
    }
}
