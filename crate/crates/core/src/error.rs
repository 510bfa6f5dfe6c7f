use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    /// A computation needed data beyond a declared cutoff or series order.
    #[error("truncation: {what} needs {needed}, available up to {available}")]
    Truncation { what: String, needed: i64, available: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn truncation(what: impl Into<String>, needed: i64, available: i64) -> Self {
        Error::Truncation {
            what: what.into(),
            needed,
            available,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
