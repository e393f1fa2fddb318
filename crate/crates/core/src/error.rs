//! Error type shared by the whole library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("the zero polynomial has no lead term")]
    ZeroPolynomial,

    #[error("operation requires a complete Groebner basis")]
    IncompleteBasis,

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("{msg} at line {line}, column {col}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("state file error: {0}")]
    State(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Coarse diagnostic category used by the CLI to pick exit codes.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::UnknownName(_) => "parse",
            Error::Io(_) | Error::State(_) => "io",
            _ => "math",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
