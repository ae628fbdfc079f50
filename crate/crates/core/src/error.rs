use thiserror::Error;

/// Errors shared by every verification layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),
    #[error("candidate frontier exhausted after {popped} candidates with {found} of {wanted} records certified")]
    FrontierExhausted {
        popped: usize,
        found: usize,
        wanted: usize,
    },
    #[error("unknown identifier: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
