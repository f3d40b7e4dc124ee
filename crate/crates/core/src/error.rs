use thiserror::Error;

/// Errors raised by field construction, polynomial algebra, counting and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    #[error("field too large: {0}")]
    FieldTooLarge(String),

    #[error("modulus is not valid: {0}")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("enumeration of {size} items exceeds budget {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent computations disagreed. Always an implementation bug.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
