//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps each variant to a distinct exit code: parse errors to 2,
/// domain errors (including division by zero) to 3, invariant failures to
/// 4 and resource-budget violations to 5.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input, with the byte offset of the offending token.
    #[error("parse error at byte {position}: {message}")]
    Parse { message: String, position: usize },

    /// Inversion of zero or division by the zero polynomial.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// An identity the implementation guarantees failed to hold; this
    /// always signals a bug, never bad input.
    #[error("internal consistency violation: {0}")]
    InvariantFailure(String),

    /// An enumeration would exceed the configured tuple budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>, position: usize) -> Self {
        Error::Parse {
            message: msg.into(),
            position,
        }
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantFailure(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
