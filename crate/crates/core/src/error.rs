use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("entries outside the band (kl={lower}, ku={upper}): {offending:?}")]
    Bandwidth {
        lower: usize,
        upper: usize,
        offending: Vec<(usize, usize)>,
    },

    #[error("singular matrix: pivot {pivot:e} at step {step} is below {threshold:e}")]
    Singular {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("incompatible problem data: {0}")]
    Incompatible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
