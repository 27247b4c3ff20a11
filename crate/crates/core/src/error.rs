use thiserror::Error;

/// Errors raised by exact arithmetic in the scalar ring and the Weyl algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial contains a negative power of hbar; the classical limit is undefined")]
    NegativeHbarPower,
    #[error("input carries hbar; project with the classical limit first")]
    NotClassical,
    #[error("division by a coefficient with {0} terms is unsupported; divisor must be a single monomial")]
    NotMonomialDivisor(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{0}` is reserved and cannot be used as a parameter name")]
    ReservedName(String),
    #[error("`{0}` is not a valid parameter name")]
    InvalidParamName(String),
}
