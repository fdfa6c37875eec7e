use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("index {index} out of range ({available} available)")]
    OutOfRange { index: usize, available: usize },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("invalid admissible set: {0}")]
    InvalidAdmissibleSet(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("not a positive measure: {0}")]
    NotPositive(String),
    #[error("convention violation: {0}")]
    Convention(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
