use thiserror::Error;

/// Errors surfaced by the construction and verification APIs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("root-of-unity order must be a positive integer")]
    InvalidOrder,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {dim} unsupported: {reason}")]
    UnsupportedDimension { dim: u64, reason: String },

    #[error("exact mode cannot represent this input: {0}; use approximate mode")]
    ModeError(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
