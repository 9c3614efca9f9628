//! Error type shared by every operation in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the documented domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request is well-formed but would exceed a configured ceiling
    /// (enumeration span, prime-table size, search bound, ...).
    #[error("resource limit: {0}")]
    Resource(String),

    /// A structural invariant that is supposed to hold unconditionally was
    /// observed to fail. This indicates a bug, never bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A fixture or report could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Process exit code for the CLI: 1 verification failure, 2 bad usage,
    /// 3 resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } => 2,
            Error::Resource(_) | Error::Io(_) => 3,
            Error::Invariant(_) => 1,
        }
    }
}
