use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Degenerate or non-finite geometric input.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A value outside its documented domain (bad layer index, unknown object id, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configuration or data field violates its invariant.
    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },

    /// Malformed input file. `line` is 1-based; 0 means the whole file.
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error on {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
