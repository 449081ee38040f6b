use thiserror::Error;

/// Errors raised by ring, matrix, solver and parsing operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    ContextMismatch,

    #[error("matrices carry different multipliers")]
    MultiplierMismatch,

    #[error("matrix is not a unit")]
    NotAUnit,

    #[error("ring {0} is infinite and cannot be enumerated")]
    NotEnumerable(String),

    #[error("matrix is not idempotent")]
    NotIdempotent,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("cannot lift root {0}: the derivative at the root is not a unit")]
    NotLiftable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error at position {pos} near {token:?}: {msg}")]
    Parse {
        pos: usize,
        token: String,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
