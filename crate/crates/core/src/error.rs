use thiserror::Error;

/// Errors raised by the engine. The CLI maps each variant onto a process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A Kupisch series violates one of its defining inequalities.
    #[error("invalid Kupisch series: {constraint} fails at position {position}")]
    InvalidKupisch { position: i64, constraint: String },

    /// Malformed arguments: length mismatches, unmet preconditions, bad flags.
    #[error("usage error: {0}")]
    Usage(String),

    /// A tuple that is not a member of the universe it was checked against.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data that is well formed but mathematically inconsistent.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// A configured resource cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
