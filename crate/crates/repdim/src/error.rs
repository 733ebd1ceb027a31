//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure categories. The CLI maps these onto exit codes, so the split
/// between "bad input", "hypothesis unmet", "resource cap" and "internal
/// invariant violation" is part of the public contract.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input (parse errors, dimension
    /// mismatches, non-admissible presentations, invalid parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A stated hypothesis does not hold, so the requested computation is
    /// refused rather than answered (e.g. semisimple algebra in a bound that
    /// excludes it, non-split top in the Hochschild bound).
    #[error("refused: {0}")]
    Refused(String),

    /// An estimate could not be stabilized on the given window.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A configured size or budget cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// An internal invariant failed. Always a bug, never a property of the
    /// input; surfaced loudly instead of being masked.
    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
    pub fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }
    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }
    pub fn cap(msg: impl Into<String>) -> Self {
        Error::ResourceCap(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
