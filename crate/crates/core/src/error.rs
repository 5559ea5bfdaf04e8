use thiserror::Error;

/// Errors raised by curve construction, integration and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("arclength {s} lies outside the domain [{start}, {end}]")]
    OutOfDomain { s: f64, start: f64, end: f64 },

    #[error("invalid domain [{start}, {end}]")]
    InvalidDomain { start: f64, end: f64 },

    #[error("curvature evaluates to {value} at s = {s}")]
    NegativeCurvature { s: f64, value: f64 },

    #[error("curvature vanishes at interior point s = {s}")]
    CurvatureVanishes { s: f64 },

    #[error("domain violation at s = {at}: {reason}")]
    DomainViolation { at: f64, reason: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("initial frame is not orthonormal and right-handed (deviation {deviation:e})")]
    InvalidFrame { deviation: f64 },

    #[error("frame vectors too far from orthonormal to repair (Gram deviation {deviation:e})")]
    TooDegenerate { deviation: f64 },

    #[error("profile has identically zero curvature; construct a straight line instead")]
    DegenerateProfile,

    #[error("torsion vanishes near theta = {theta}; the tangent equation is undefined there")]
    TorsionVanishes { theta: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("estimated curvature below threshold at every sample")]
    CurvatureTooSmall,

    #[error("helix angle parameter n = {n} must lie in (0, 1)")]
    BadAngle { n: f64 },

    #[error("parameter t = {t} leaves the principal arcsine branch")]
    BranchViolation { t: f64 },

    #[error("curvature must be strictly positive, found {value} at s = {s}")]
    NonPositiveCurvature { s: f64, value: f64 },

    #[error("transformation must be strictly positive, found {value} at s = {s}")]
    NonPositiveLambda { s: f64, value: f64 },

    #[error("correspondence leaves the partner domain at s = {at}")]
    DomainExhausted { at: f64 },

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("samples are not uniformly spaced at index {index}")]
    NonUniformGrid { index: usize },
}

impl CurveError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            CurveError::OutOfDomain { .. } => "OutOfDomain",
            CurveError::InvalidDomain { .. } => "InvalidDomain",
            CurveError::NegativeCurvature { .. } => "NegativeCurvature",
            CurveError::CurvatureVanishes { .. } => "CurvatureVanishes",
            CurveError::DomainViolation { .. } => "DomainViolation",
            CurveError::InvalidParameter { .. } => "InvalidParameter",
            CurveError::InvalidFrame { .. } => "InvalidFrame",
            CurveError::TooDegenerate { .. } => "TooDegenerate",
            CurveError::DegenerateProfile => "DegenerateProfile",
            CurveError::TorsionVanishes { .. } => "TorsionVanishes",
            CurveError::TooFewSamples { .. } => "TooFewSamples",
            CurveError::CurvatureTooSmall => "CurvatureTooSmall",
            CurveError::BadAngle { .. } => "BadAngle",
            CurveError::BranchViolation { .. } => "BranchViolation",
            CurveError::NonPositiveCurvature { .. } => "NonPositiveCurvature",
            CurveError::NonPositiveLambda { .. } => "NonPositiveLambda",
            CurveError::DomainExhausted { .. } => "DomainExhausted",
            CurveError::DegenerateCurve(_) => "DegenerateCurve",
            CurveError::NonUniformGrid { .. } => "NonUniformGrid",
        }
    }
}

pub type Result<T> = std::result::Result<T, CurveError>;
