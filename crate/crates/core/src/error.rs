use thiserror::Error;

/// Errors raised by the exact and sampled routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("set is not a cone (its only vertex must be the origin)")]
    NotACone,

    #[error("set does not contain the origin")]
    MissingOrigin,

    #[error("scaling factor must be strictly positive, got {0}")]
    NonPositiveScale(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("not generated by cone family: {0}")]
    NotGenerated(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
