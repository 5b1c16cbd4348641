use thiserror::Error;

/// Errors raised by the toolkit.
///
/// "Not an NCF" and "not collapsible" are ordinary answers and are returned
/// as `Option::None`, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Element arithmetic was requested on a cardinality-only field.
    #[error("unsupported field mode: {0}")]
    UnsupportedMode(String),

    /// A piecewise description violates its invariants.
    #[error("invalid piecewise spec: {0}")]
    InvalidSpec(String),

    /// A layer structure violates its invariants.
    #[error("invalid layer structure: {0}")]
    InvalidStructure(String),

    /// A feasibility guard refused to start an exhaustive computation.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: String,
        limit: String,
    },

    /// Malformed textual input.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
