//! Frenet frames, sampled curves, the Frenet–Serret integrator and the
//! third-order tangent equation check.

mod curve;
mod frame;
mod integrate;
mod residual;

pub use curve::{CurveSample, Provenance, SampledCurve};
pub use frame::{gram_deviation, reorthonormalize, FrenetFrame, FRAME_TOLERANCE, REPAIR_LIMIT};
pub use integrate::integrate_frenet;
pub use residual::{tangent_ode_residual, ResidualSeries, TORSION_FLOOR};

pub(crate) use curve::step_count;
