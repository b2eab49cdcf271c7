use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violates a domain invariant (label slot, probability range, empty input, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Parallel sequences that must line up do not.
    #[error("length mismatch: {what} (expected {expected}, got {actual})")]
    LengthMismatch {
        what: String,
        expected: usize,
        actual: usize,
    },

    /// A record in a prediction file could not be decoded.
    #[error("{}:{line}: {path}: {message}", file.display())]
    Parse {
        file: PathBuf,
        line: usize,
        path: String,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Failure talking to an external completion endpoint.
    #[error("endpoint error: {0}")]
    Endpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn length(what: impl Into<String>, expected: usize, actual: usize) -> Self {
        Error::LengthMismatch {
            what: what.into(),
            expected,
            actual,
        }
    }
}
