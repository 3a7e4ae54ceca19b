use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("odd power of q^(1/2) survives; cannot evaluate as a function of q")]
    HalfIntegerExponent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("twist rule mismatch: {0} vs {1}")]
    RuleMismatch(String, String),
    #[error("constant term is not invertible")]
    NonUnitConstant,
    #[error("enumeration budget exceeded: need {required} points, budget is {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("not a Dynkin quiver: {0}")]
    NotDynkin(String),
    #[error("expected a polynomial in q, got {0}")]
    NotPolynomial(String),
    #[error("missing Grassmannian count for gamma = {0}")]
    MissingEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
