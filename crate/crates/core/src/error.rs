use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("point is outside the half-space model (t = {0})")]
    NonPositiveT(String),

    #[error("{0} is not the square of a rational number")]
    NotASquare(String),

    #[error("numerator is divisible by t")]
    DivisibleByT,

    #[error("geodesic left the model at s = {s} after {samples} samples")]
    StepUnderflow { s: f64, samples: usize },

    #[error("point is too close to a critical point of F (|grad F| = {0:e})")]
    NearSingular(f64),

    #[error("family specification violates an invariant: {0}")]
    InvalidFamily(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
