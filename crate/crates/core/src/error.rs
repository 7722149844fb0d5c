use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,

    #[error("exponent vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("budget exhausted after {pairs} pair reductions ({elapsed_ms} ms); partial basis has {partial} elements")]
    Budget {
        pairs: u64,
        elapsed_ms: u64,
        /// Partial basis computed so far; the computation can be resumed from it.
        partial: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn indeterminate(msg: impl Into<String>) -> Self {
        Error::Indeterminate(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
