use thiserror::Error;

/// Errors raised by the library surface.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LupError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (defect {defect:e} exceeds {limit:e})")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("argument {value} outside the supported range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("series or quadrature failed to reach tolerance {tol:e}: {detail}")]
    ToleranceNotMet { tol: f64, detail: String },

    #[error("log-space index {index} exceeds the validated range {limit}")]
    Overflow { index: f64, limit: f64 },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, LupError>;

impl LupError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        LupError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for LupError {
    fn from(e: std::io::Error) -> Self {
        LupError::Io(e.to_string())
    }
}
