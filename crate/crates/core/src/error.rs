use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed job text; line and column are 1-based.
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// Inputs violate the documented precondition of an operation.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A requested graded strand lies beyond the configured bound.
    #[error("strand bound exceeded: need internal degree {needed}, bound is {bound}")]
    StrandBound { needed: i64, bound: i64 },

    /// An engine invariant failed; always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Precondition(_) | Error::StrandBound { .. } => 3,
            Error::Internal(_) => 4,
        }
    }
}
