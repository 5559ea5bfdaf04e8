//! Discrete Frenet estimation, the slant-helix invariant, the Darboux vector,
//! curve classification and quadric fitting.

mod classify;
mod estimate;
mod quadric;
mod sigma;

pub use classify::{
    classify, AxisEstimate, ClassificationReport, ClassifyTolerances, CurveClass, PrecessionFit, SeriesStats,
};
pub use estimate::{estimate_frames, EstimateFlag, FrameEstimate, FrenetEstimate, CURVATURE_FLOOR};
pub use quadric::{fit_quadric, QuadricFit};
pub use sigma::{darboux_series, geodesic_curvature_sigma};
