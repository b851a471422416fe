//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction, evaluation and I/O routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition on an argument was violated (e.g. `alpha <= -1/2`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument is outside the certified working range of an evaluation routine.
    #[error("range error: {msg}")]
    Range {
        msg: String,
        /// A suggested replacement for the offending parameter, when one exists.
        suggested: Option<f64>,
    },

    /// Structural validation failed (mismatched grids, bad node counts, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numerical-quality check failed (step sizes, ill-conditioned fits, ...).
    #[error("numerical-quality error: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn range(msg: impl Into<String>, suggested: Option<f64>) -> Self {
        Error::Range {
            msg: msg.into(),
            suggested,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
