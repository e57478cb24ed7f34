use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input failed validation (malformed word, violated precondition, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The request would exceed an enumeration or search budget.
    #[error("budget exceeded for {what}: requires {required}, limit {limit}")]
    Budget {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn budget(
        what: &'static str,
        required: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Budget {
            what,
            required: required.to_string(),
            limit: limit.to_string(),
        }
    }
}
