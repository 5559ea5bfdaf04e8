use crate::error::{CurveError, Result};
use crate::profiles::IntrinsicProfile;
use crate::Vec3;

use super::curve::{step_count, CurveSample, Provenance, SampledCurve};
use super::frame::{reorthonormalize, FrenetFrame};

/// (T, N, B, position).
type State = [Vec3; 4];

fn rhs(y: &State, kappa: f64, tau: f64) -> State {
    let [t, n, b, _] = *y;
    [n * kappa, t * -kappa + b * tau, n * -tau, t]
}

fn axpy(y: &State, h: f64, k: &State) -> State {
    [y[0] + k[0] * h, y[1] + k[1] * h, y[2] + k[2] * h, y[3] + k[3] * h]
}

/// Integrates the Frenet–Serret system with classical RK4 from `frame0`, `pos0` at the domain start.
///
/// The step is shrunk to `len / ceil(len / step)` so that the last sample
/// lands on the domain end. After every step the frame is re-orthonormalized.
pub fn integrate_frenet(
    profile: &IntrinsicProfile,
    frame0: FrenetFrame,
    pos0: Vec3,
    step: f64,
) -> Result<SampledCurve> {
    if profile.is_straight() {
        return Err(CurveError::DegenerateProfile);
    }
    let domain = profile.domain();
    let count = step_count(domain, step)?;
    if count > 0 && step > domain.len() / 4.0 * (1.0 + 1e-12) {
        return Err(CurveError::InvalidParameter {
            name: "step",
            reason: format!("step {step} exceeds a quarter of the domain length {}", domain.len()),
        });
    }
    let h = if count == 0 { step } else { domain.len() / count as f64 };
    let at = |i: usize| if i == count { domain.end } else { domain.start + i as f64 * h };

    let (k0, t0) = profile.eval(domain.start)?;
    let mut samples = Vec::with_capacity(count + 1);
    samples.push(CurveSample {
        s: domain.start,
        position: pos0,
        frame: frame0,
        kappa: k0,
        tau: t0,
    });
    let mut y: State = [frame0.tangent(), frame0.normal(), frame0.binormal(), pos0];
    let (mut k_left, mut t_left) = (k0, t0);
    for i in 0..count {
        let (s0, s1) = (at(i), at(i + 1));
        let (k_mid, t_mid) = profile.eval(0.5 * (s0 + s1))?;
        let (k_right, t_right) = profile.eval(s1)?;
        let dt = s1 - s0;
        let k1 = rhs(&y, k_left, t_left);
        let k2 = rhs(&axpy(&y, dt / 2.0, &k1), k_mid, t_mid);
        let k3 = rhs(&axpy(&y, dt / 2.0, &k2), k_mid, t_mid);
        let k4 = rhs(&axpy(&y, dt, &k3), k_right, t_right);
        let mut next = y;
        for c in 0..4 {
            next[c] += (k1[c] + k2[c] * 2.0 + k3[c] * 2.0 + k4[c]) * (dt / 6.0);
        }
        let frame = reorthonormalize(next[0], next[1], next[2])?;
        y = [frame.tangent(), frame.normal(), frame.binormal(), next[3]];
        samples.push(CurveSample {
            s: s1,
            position: next[3],
            frame,
            kappa: k_right,
            tau: t_right,
        });
        (k_left, t_left) = (k_right, t_right);
    }
    SampledCurve::new(h, samples, Provenance::Integrated)
}
