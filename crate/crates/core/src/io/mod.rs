//! Serialization: profile JSON, curve CSV, report JSON and SVG projections.

mod curve_csv;
mod profile;
mod report;
mod svg;

use thiserror::Error;

use crate::error::CurveError;

pub use curve_csv::{read_curve_csv, write_curve_csv, CSV_HEADER};
pub use profile::{parse_field, parse_profile_file};
pub use report::{classification_json, similarity_json, verify_json};
pub use svg::{svg_projection, Plane};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("profile invariant violated at `{path}`: {source}")]
    ProfileInvariantViolation { path: String, source: CurveError },

    #[error("CSV error at line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl IoError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            IoError::Parse { .. } => "ParseError",
            IoError::Schema { .. } => "SchemaError",
            IoError::ProfileInvariantViolation { .. } => "ProfileInvariantViolation",
            IoError::Csv { .. } => "CsvError",
            IoError::Curve(e) => e.kind(),
        }
    }
}
