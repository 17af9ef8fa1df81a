use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} exhausted at {limit}")]
    Exhausted { what: &'static str, limit: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("cannot certify: {0}")]
    Uncertified(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    /// True for errors caused by a search budget or enumeration bound.
    pub fn is_exhaustion(&self) -> bool {
        matches!(self, Error::Exhausted { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
