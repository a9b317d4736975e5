use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("exponent must be at least 1, got {0}")]
    BadExponent(u32),

    #[error("{p}^{r} does not fit below 2^63")]
    Overflow { p: u64, r: u32 },

    #[error("{0} is not a unit")]
    NotAUnit(u64),

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors live over different rings")]
    RingMismatch,

    #[error("enumeration of at least {states} states exceeds the limit of {max}")]
    TooLarge { states: u128, max: u128 },

    #[error("not a submodule: {0}")]
    NotASubmoduleOf(String),

    #[error("not a p-basis: {0}")]
    NotAPBasis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
