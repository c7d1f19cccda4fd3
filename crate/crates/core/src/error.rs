use thiserror::Error;

pub use crate::parser::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unsupported operator for this backend: {0}")]
    Unsupported(String),

    #[error("atom '{atom}' is not in the alphabet {alphabet:?}")]
    AlphabetMismatch { atom: String, alphabet: Vec<String> },

    #[error("state budget of {limit} exceeded while building {what}")]
    Budget { what: &'static str, limit: usize },

    #[error("size limit: {0}")]
    SizeLimit(String),

    #[error("metric operator evaluated on an untimed trace")]
    UntimedMetric,

    #[error("invalid trace: {0}")]
    InvalidTrace(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
