use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum MmError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    /// Seeded retries for an almost-surely-achievable property were exhausted.
    #[error("generic-position failure in {stage} after {} attempts (seeds {seeds:?})", seeds.len())]
    GenericPosition { stage: String, seeds: Vec<u64> },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl MmError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        MmError::Validation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        MmError::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, MmError>;
