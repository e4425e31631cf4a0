use thiserror::Error;

/// Errors produced anywhere in the toolkit.
///
/// Every variant maps onto one of the CLI exit classes through
/// [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at token `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("input outside the promise: {0}")]
    PromiseViolation(String),

    #[error("refusing {what}: requested {requested} exceeds limit {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal(message.into())
    }

    /// Process exit code for this error: 2 input, 3 limit refusal, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::Precondition(_)
            | Error::PromiseViolation(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::LimitExceeded { .. } => 3,
            Error::Overflow(_) | Error::Internal(_) => 4,
        }
    }
}
