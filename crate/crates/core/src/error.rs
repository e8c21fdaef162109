use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertices {0} and {1} are not connected")]
    Disconnected(usize, usize),

    /// An exhaustive run would exceed the configured size guard.
    #[error("size guard: {what} with {size} leaves exceeds limit {limit} (pass --force to override)")]
    Guard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// A reduction produced a witness that contradicts the construction it verifies.
    #[error("reduction soundness violation: {0}")]
    Soundness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
