use thiserror::Error;

/// Errors raised by the library.
///
/// Budget exhaustion is kept distinct from "no witness": a search that runs
/// out of budget says nothing about whether a witness exists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("non-canonical ordinal at position {pos}: {msg}")]
    Canonicity { pos: usize, msg: String },

    #[error("nesting depth exceeds the limit of {limit}")]
    DepthExceeded { limit: usize },

    #[error("operation is undefined on the zero ordinal")]
    ZeroOrdinal,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("size function needs a nonempty set")]
    EmptySet,

    #[error("element {0} lies outside the coloring's domain")]
    OutOfDomain(u64),

    #[error("budget of {limit} steps exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
