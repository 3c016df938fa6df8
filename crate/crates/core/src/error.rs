use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("length {0} must be even and non-zero")]
    OddLength(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("non-finite path metric at phase {phase}")]
    NonFinite { phase: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
