//! Piecewise-cubic interpolation.

use crate::error::{CurveError, Result};

/// Cubic Hermite basis weights `[h00, h10, h01, h11]` at local coordinate `u`.
#[inline]
pub fn hermite_weights(u: f64) -> [f64; 4] {
    let u2 = u * u;
    let u3 = u2 * u;
    [
        2.0 * u3 - 3.0 * u2 + 1.0,
        u3 - 2.0 * u2 + u,
        -2.0 * u3 + 3.0 * u2,
        u3 - u2,
    ]
}

/// Four-point Lagrange weights for nodes at local coordinates -1, 0, 1, 2.
#[inline]
pub fn lagrange4_weights(u: f64) -> [f64; 4] {
    [
        -u * (u - 1.0) * (u - 2.0) / 6.0,
        (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
        -(u + 1.0) * u * (u - 2.0) / 2.0,
        (u + 1.0) * u * (u - 1.0) / 6.0,
    ]
}

/// Locator on a uniform grid `start + i * step`, `i < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformGrid {
    /// Interval index `i` (so `x` lies in `[x_i, x_{i+1}]`) and local coordinate in `[0, 1]`.
    pub fn locate(&self, x: f64) -> (usize, f64) {
        debug_assert!(self.len >= 2);
        let r = (x - self.start) / self.step;
        let last = self.len - 2;
        let i = (r.floor().max(0.0) as usize).min(last);
        let u = (r - i as f64).clamp(0.0, 1.0);
        (i, u)
    }

    pub fn end(&self) -> f64 {
        self.start + (self.len - 1) as f64 * self.step
    }
}

/// Shape-preserving piecewise cubic Hermite interpolant.
///
/// Slopes are limited per interval (Fritsch–Carlson) so that monotone data
/// produce a monotone interpolant and non-negative data never overshoot
/// below a zero knot value.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant with three-point harmonic-mean slope estimates.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        validate(&knots, &values)?;
        let n = knots.len();
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (values[k + 1] - values[k]) / h[k]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for k in 1..n - 1 {
                let (d0, d1) = (delta[k - 1], delta[k]);
                if d0 * d1 > 0.0 {
                    let w1 = 2.0 * h[k] + h[k - 1];
                    let w2 = h[k] + 2.0 * h[k - 1];
                    d[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
                }
            }
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Ok(Self::limited(knots, values, d, &delta))
    }

    /// Builds the interpolant from caller-supplied slopes, limited for monotonicity.
    pub fn with_slopes(knots: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        validate(&knots, &values)?;
        if slopes.len() != knots.len() || slopes.iter().any(|d| !d.is_finite()) {
            return Err(CurveError::InvalidParameter {
                name: "slopes",
                reason: "one finite slope per knot required".into(),
            });
        }
        let delta: Vec<f64> = knots
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect();
        Ok(Self::limited(knots, values, slopes, &delta))
    }

    fn limited(knots: Vec<f64>, values: Vec<f64>, mut d: Vec<f64>, delta: &[f64]) -> Self {
        for (k, &dk) in delta.iter().enumerate() {
            if dk == 0.0 {
                d[k] = 0.0;
                d[k + 1] = 0.0;
                continue;
            }
            let mut a = d[k] / dk;
            let mut b = d[k + 1] / dk;
            if a < 0.0 {
                d[k] = 0.0;
                a = 0.0;
            }
            if b < 0.0 {
                d[k + 1] = 0.0;
                b = 0.0;
            }
            let r = a * a + b * b;
            if r > 9.0 {
                let t = 3.0 / r.sqrt();
                d[k] = t * a * dk;
                d[k + 1] = t * b * dk;
            }
        }
        Self {
            knots,
            values,
            slopes: d,
        }
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn first_knot(&self) -> f64 {
        self.knots[0]
    }

    pub fn last_knot(&self) -> f64 {
        self.knots[self.knots.len() - 1]
    }

    fn segment(&self, x: f64) -> usize {
        let k = self.knots.partition_point(|&k| k <= x);
        k.saturating_sub(1).min(self.knots.len() - 2)
    }

    /// Evaluates the interpolant; constant extension outside the knot range.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.knots[0] {
            return self.values[0];
        }
        if x >= self.last_knot() {
            return self.values[self.values.len() - 1];
        }
        let k = self.segment(x);
        let h = self.knots[k + 1] - self.knots[k];
        let w = hermite_weights((x - self.knots[k]) / h);
        w[0] * self.values[k]
            + w[1] * h * self.slopes[k]
            + w[2] * self.values[k + 1]
            + w[3] * h * self.slopes[k + 1]
    }

    /// Exact integral of the interpolant (with its constant extension) over `[a, b]`.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return -self.integral(b, a);
        }
        self.primitive(b) - self.primitive(a)
    }

    fn primitive(&self, x: f64) -> f64 {
        let first = self.knots[0];
        if x <= first {
            return (x - first) * self.values[0];
        }
        let mut total = 0.0;
        let last = self.knots.len() - 1;
        for k in 0..last {
            let (x0, x1) = (self.knots[k], self.knots[k + 1]);
            if x <= x0 {
                break;
            }
            let h = x1 - x0;
            let u = ((x.min(x1)) - x0) / h;
            let u2 = u * u;
            let u3 = u2 * u;
            let u4 = u3 * u;
            let i00 = u4 / 2.0 - u3 + u;
            let i10 = u4 / 4.0 - 2.0 * u3 / 3.0 + u2 / 2.0;
            let i01 = -u4 / 2.0 + u3;
            let i11 = u4 / 4.0 - u3 / 3.0;
            total += h
                * (i00 * self.values[k]
                    + i10 * h * self.slopes[k]
                    + i01 * self.values[k + 1]
                    + i11 * h * self.slopes[k + 1]);
        }
        if x > self.knots[last] {
            total += (x - self.knots[last]) * self.values[last];
        }
        total
    }

    /// Interpolant of the inverse map for strictly increasing data.
    pub fn inverse(&self) -> Result<Self> {
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CurveError::InvalidParameter {
                name: "values",
                reason: "inverse requires strictly increasing values".into(),
            });
        }
        let slopes = self
            .slopes
            .iter()
            .map(|&d| if d > 0.0 { 1.0 / d } else { 0.0 })
            .collect();
        let mut inv = Self::with_slopes(self.values.clone(), self.knots.clone(), slopes)?;
        // Zero slopes from the limiter map to infinite inverse slopes; use secants there.
        for k in 0..inv.slopes.len() {
            if self.slopes[k] <= 0.0 {
                let lo = k.saturating_sub(1);
                let hi = (k + 1).min(inv.knots.len() - 1);
                inv.slopes[k] = (inv.values[hi] - inv.values[lo]) / (inv.knots[hi] - inv.knots[lo]);
            }
        }
        Ok(inv)
    }
}

fn validate(knots: &[f64], values: &[f64]) -> Result<()> {
    if knots.len() < 2 {
        return Err(CurveError::InvalidParameter {
            name: "knots",
            reason: format!("need at least 2 knots, got {}", knots.len()),
        });
    }
    if knots.len() != values.len() {
        return Err(CurveError::InvalidParameter {
            name: "values",
            reason: format!("{} knots but {} values", knots.len(), values.len()),
        });
    }
    if knots.iter().chain(values).any(|v| !v.is_finite()) {
        return Err(CurveError::InvalidParameter {
            name: "knots",
            reason: "knots and values must be finite".into(),
        });
    }
    if let Some(i) = knots.windows(2).position(|w| w[1] <= w[0]) {
        return Err(CurveError::InvalidParameter {
            name: "knots",
            reason: format!("knots not strictly increasing at index {}", i + 1),
        });
    }
    Ok(())
}

fn end_slope(h0: f64, h1: f64, del0: f64, del1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d * del0 <= 0.0 {
        0.0
    } else if del0 * del1 < 0.0 && d.abs() > 3.0 * del0.abs() {
        3.0 * del0
    } else {
        d
    }
}
