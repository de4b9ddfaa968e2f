use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter or combination of parameters is not usable.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Input data violates a structural requirement.
    #[error("invalid data: {0}")]
    Data(String),

    /// Text input could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal invariant did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
