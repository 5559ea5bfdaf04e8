//! Composite quadrature on uniform grids.
//!
//! Two families live here: definite integrals of closures (composite Simpson
//! with Richardson refinement) and cumulative integrals of sampled data
//! (fourth-order, one value per grid node).

use std::ops::{Add, Mul};

use crate::Vec3;

const MIN_PANELS: usize = 16;
const MAX_PANELS: usize = 1 << 22;

/// Composite Simpson's rule with `panels` subintervals (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Composite Simpson with panel doubling and one Richardson step.
///
/// Doubles the panel count until two successive Simpson sums agree to
/// `rel_tol` (relative to the integral magnitude, floored at 1), then returns
/// the extrapolated value `S(2n) + (S(2n) - S(n)) / 15`.
pub fn simpson_richardson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut n = MIN_PANELS;
    let mut coarse = simpson(&f, a, b, n);
    loop {
        n *= 2;
        let fine = simpson(&f, a, b, n);
        let diff = fine - coarse;
        if diff.abs() <= rel_tol * fine.abs().max(1.0) || n >= MAX_PANELS || !diff.is_finite() {
            return fine + diff / 15.0;
        }
        coarse = fine;
    }
}

/// Default tolerance used when integrating scalar fields.
pub const FIELD_TOLERANCE: f64 = 1e-14;

/// Cumulative integral of uniformly sampled data, anchored at 0 on the first node.
///
/// Interior intervals use the four-point rule
/// `h/24 (-f[i-1] + 13 f[i] + 13 f[i+1] - f[i+2])`, the two end intervals its
/// one-sided variants; every interval is exact for cubics, so the running
/// sum is globally fourth order without the odd/even alternation of
/// pairwise Simpson accumulation.
pub fn cumulative<T>(values: &[T], h: f64) -> Vec<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Zero,
{
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(T::zero());
    if n == 1 {
        return out;
    }
    let f = values;
    let interval = |i: usize| -> T {
        if n == 2 {
            return (f[0] + f[1]) * (h / 2.0);
        }
        if n == 3 {
            return if i == 0 {
                (f[0] * 5.0 + f[1] * 8.0 + f[2] * -1.0) * (h / 12.0)
            } else {
                (f[0] * -1.0 + f[1] * 8.0 + f[2] * 5.0) * (h / 12.0)
            };
        }
        if i == 0 {
            (f[0] * 9.0 + f[1] * 19.0 + f[2] * -5.0 + f[3]) * (h / 24.0)
        } else if i == n - 2 {
            (f[n - 4] + f[n - 3] * -5.0 + f[n - 2] * 19.0 + f[n - 1] * 9.0) * (h / 24.0)
        } else {
            (f[i - 1] * -1.0 + f[i] * 13.0 + f[i + 1] * 13.0 + f[i + 2] * -1.0) * (h / 24.0)
        }
    };
    let mut acc = T::zero();
    for i in 0..n - 1 {
        acc = acc + interval(i);
        out.push(acc);
    }
    out
}

/// Additive identity for the cumulative integrators.
pub trait Zero {
    fn zero() -> Self;
}

impl Zero for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Zero for Vec3 {
    fn zero() -> Self {
        Vec3::zeros()
    }
}
