use thiserror::Error;

/// Errors raised while constructing or verifying a generalized Hermite system.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-domain input supplied by the caller.
    #[error("invalid input: {0}")]
    Input(String),

    /// A constructor produced a sequence that breaks its own contract.
    #[error("construction failed: {0}")]
    Construction(String),

    /// A bracket or squared recurrence coefficient is not strictly positive.
    #[error("bracket [{index}] = {value} is not positive; no orthonormal system exists")]
    NonPositiveBracket { index: usize, value: String },

    /// Two independent routes to the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// The requested identity only exists for the two-parameter family.
    #[error("unsupported for this system: {0}")]
    Unsupported(String),

    /// Evaluation point outside the domain of the expression.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
