//! Crate-wide error type.

use alloc::string::String;

/// Errors produced by the numerical pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violated a documented precondition.
    Domain(String),
    /// A quadrature or solver failed to reach its tolerance; the message
    /// carries diagnostics (node counts, last interval, the offending point).
    Numeric(String),
    /// An internal consistency check failed, signalling a bug rather than a
    /// bad input (e.g. a negative condensate spectral weight).
    Consistency(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Numeric(m) => write!(f, "numeric error: {m}"),
            Error::Consistency(m) => write!(f, "consistency error: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
