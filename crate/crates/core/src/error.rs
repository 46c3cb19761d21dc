use thiserror::Error;

/// Errors raised by the field, polynomial, group-action and counting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} outside the supported range 1..=64")]
    DegreeOutOfRange(u32),

    #[error("modulus {0} is not an irreducible binary polynomial")]
    ReducibleModulus(String),

    #[error("tower degree n*r = {0} exceeds 64")]
    TowerTooLarge(u64),

    #[error("field context mismatch")]
    ContextMismatch,

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined on a constant polynomial")]
    ConstantPolynomial,

    #[error("parameter hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("guard exceeded: {what} = {value} is above the ceiling {ceiling}")]
    GuardExceeded {
        what: &'static str,
        value: String,
        ceiling: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An arithmetic identity that must hold did not; always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn guard(what: &'static str, value: impl ToString, ceiling: impl ToString) -> Self {
        Error::GuardExceeded {
            what,
            value: value.to_string(),
            ceiling: ceiling.to_string(),
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
