//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Broad failure classes, used by callers (e.g. the CLI) to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input outside an operation's domain (malformed rational, λ out of
    /// range, non-TSS λ passed to a TSS-only operation, ...).
    Domain,
    /// A depth or size guard refused the computation.
    Resource,
    /// An iterative numeric routine failed to converge.
    Numeric,
    /// A bounded search ended without the guaranteed witness; the caller
    /// should retry with a larger window.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Error {
    kind: ErrorKind,
    msg: String,
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error { kind: ErrorKind::Domain, msg: msg.into() }
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error { kind: ErrorKind::Resource, msg: msg.into() }
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error { kind: ErrorKind::Numeric, msg: msg.into() }
    }

    pub fn exhausted(msg: impl Into<String>) -> Self {
        Error { kind: ErrorKind::Exhausted, msg: msg.into() }
    }

    pub fn kind(&self) -> ErrorKind {
        self.kind
    }

    pub fn message(&self) -> &str {
        &self.msg
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            ErrorKind::Domain => "domain error",
            ErrorKind::Resource => "resource guard",
            ErrorKind::Numeric => "numeric error",
            ErrorKind::Exhausted => "search window exhausted",
        };
        write!(f, "{label}: {}", self.msg)
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
