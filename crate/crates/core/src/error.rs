use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data or a violated precondition.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A construction would exceed the configured entry budget.
    #[error("resource guard: {what} needs {entries} potential entries (budget {budget})")]
    Resource { what: String, entries: u128, budget: u128 },
    /// An internal consistency check failed (a sub-object was not stable, etc.).
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
