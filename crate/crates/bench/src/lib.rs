//! Fixtures shared by the benchmarks.

use simcurve::{FrenetFrame, Interval, IntrinsicProfile, SampledCurve, ScalarField, Vec3};

/// Circular helix with `kappa = 0.8`, `tau = 0.6` on `[0, len]`.
pub fn helix_profile(len: f64) -> IntrinsicProfile {
    IntrinsicProfile::new(
        ScalarField::constant(0.8),
        ScalarField::constant(0.6),
        Interval::new(0.0, len).expect("valid domain"),
    )
    .expect("valid profile")
}

/// Smooth profile with varying curvature and torsion on `[0, len]`.
pub fn wavy_profile(len: f64) -> IntrinsicProfile {
    IntrinsicProfile::new(
        ScalarField::sinusoid(1.0, 0.3, 1.7, 0.2).expect("finite"),
        ScalarField::polynomial(vec![0.3, 0.1, -0.02]),
        Interval::new(0.0, len).expect("valid domain"),
    )
    .expect("valid profile")
}

pub fn integrated(profile: &IntrinsicProfile, h: f64) -> SampledCurve {
    simcurve::integrate_frenet(profile, FrenetFrame::canonical(), Vec3::zeros(), h).expect("integrable")
}
