use thiserror::Error;

use crate::game::Boundary;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("boundary mismatch: {left} does not match {right}")]
    BoundaryMismatch { left: Boundary, right: Boundary },

    #[error("invalid game: {}", .0.join("; "))]
    InvalidGame(Vec<String>),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource guard exceeded: {0}")]
    Resource(String),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn syntax(message: impl Into<String>, line: usize, column: usize) -> Self {
        Error::Syntax {
            message: message.into(),
            line,
            column,
        }
    }

    /// True for errors caused by a configured resource guard.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
