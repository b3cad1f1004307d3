use thiserror::Error;

/// Failures raised by the generalized-inverse engine and the fuzzy solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("core inverse requires index <= 1, matrix has index {0}")]
    IndexTooLarge(usize),

    #[error("plain inverse requested but the associated matrix is singular (index {0})")]
    IndexNonzero(usize),

    #[error("right-hand side is not in the range of S^{0}; S^(core-EP) Y is not an exact solution")]
    NotInRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
