use thiserror::Error;

/// Errors produced by the analysis engine.
///
/// Input errors are caller mistakes (malformed data, violated preconditions);
/// capability errors mean the request is well-formed but exceeds a guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("capability error: {0}")]
    Capability(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Syntax { .. } => 2,
            Error::Capability(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
