//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Text-format parse failure, with the 1-based line number of the offending line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A precondition on operation inputs was violated.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Exact mode requested beyond the size limit it is guaranteed to handle.
    #[error("size guard: {0}")]
    SizeGuard(String),

    /// Lookup of a registry identifier (property, parameter, generator, kernel) failed.
    #[error("unknown identifier: {0}")]
    UnknownId(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn size_guard(msg: impl Into<String>) -> Self {
        Error::SizeGuard(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
