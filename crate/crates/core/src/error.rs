use thiserror::Error;

/// Errors raised by the engine.
///
/// Syntax errors carry the byte offset into the offending input. Everything
/// else is a domain error: an argument outside the range an operation accepts,
/// or an exact operation that has no exact answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("g-series coefficient index must be non-negative, got {0}")]
    NegativeIndex(i64),

    #[error("exponential of a series with nonzero constant term")]
    NonzeroConstantTerm,

    #[error("quotient is not a Laurent polynomial")]
    InexactDivision,

    #[error("cannot evaluate half-integer power q^({0}/2) at a rational point")]
    HalfIntegerPower(i64),

    #[error("invalid argument: {0}")]
    Domain(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the CLI: 1 for syntax errors, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
