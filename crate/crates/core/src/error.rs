use thiserror::Error;

use crate::matrix::Occurrence;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed matrix text. Line and column are 1-based.
    #[error("format error at line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Format {
        line: usize,
        column: Option<usize>,
        message: String,
    },

    /// An operation was called outside its documented preconditions.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A witness operation produced an output that failed re-verification.
    #[error("witness verification failed: {message}{}", occurrence.as_ref().map(|o| format!(" (occurrence {o})")).unwrap_or_default())]
    Witness {
        message: String,
        occurrence: Option<Occurrence>,
    },

    #[error("search budget exceeded: {message}{}", partial_bound.map(|b| format!(" (partial bound {b})")).unwrap_or_default())]
    Budget {
        message: String,
        partial_bound: Option<usize>,
    },

    #[error("unknown matrix `{name}`; available: {}", available.join(", "))]
    UnknownName { name: String, available: Vec<String> },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
