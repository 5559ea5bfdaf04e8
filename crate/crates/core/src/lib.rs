//! Space curves from intrinsic data.
//!
//! Curvature and torsion profiles, a Frenet–Serret integrator, closed-form
//! generators for plane curves, general and slant helices and Salkowski
//! curves, discrete Frenet estimation and classification, and the
//! variable-transformation similarity relation between curves.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN.

pub mod analysis;
pub mod error;
pub mod frenet;
pub mod generators;
pub mod interp;
pub mod io;
pub mod profiles;
pub mod quadrature;
pub mod similarity;

pub use error::{CurveError, Result};
pub use frenet::{integrate_frenet, CurveSample, FrenetFrame, Provenance, SampledCurve};
pub use profiles::{
    precession_profile, slant_torsion_from_curvature, Interval, IntrinsicProfile, PrecessionParams, ScalarField,
    Sign,
};

/// Vectors in Euclidean 3-space.
pub type Vec3 = nalgebra::Vector3<f64>;
