use thiserror::Error;

/// Errors raised by the linear-algebra kernels and everything built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e}, allowed {allowed:.3e})")]
    NotHermitian { asymmetry: f64, allowed: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("exponent {0} outside the admissible range")]
    AlphaOutOfRange(f64),

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid ensemble: {0}")]
    InvalidSpec(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;
