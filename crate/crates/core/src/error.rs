use thiserror::Error;

/// Errors raised by the interpolation and set-geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two nodes of the same row coincide.
    #[error("duplicate nodes at positions {first} and {second}")]
    DuplicateNodes { first: usize, second: usize },

    /// A text input (matrix, nodes, basis or set file) could not be read.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A computation produced a non-finite or otherwise unusable result.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
