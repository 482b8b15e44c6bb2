use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("PX({n},{k}) is not a Cayley graph")]
    NotCayley { n: usize, k: usize },

    #[error("invalid proof instance: {0}")]
    InvalidInstance(String),

    #[error("methods disagree on PX({n},{k}): {detail}")]
    Disagreement { n: usize, k: usize, detail: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
