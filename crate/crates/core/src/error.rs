use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("exp_series requires a zero constant term, got {0}")]
    NonzeroConstantTerm(String),

    #[error("coefficient {index} of the EGF gives non-integer value {value}")]
    NonIntegerCoefficient { index: usize, value: String },

    #[error("requested index {requested} exceeds series order {order}")]
    OrderTooSmall { requested: usize, order: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: n = {n} exceeds the guard {limit}")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("family {0} is not supported by this operation")]
    UnsupportedFamily(String),

    #[error("lambert_w is only defined here for x >= 0, got {0}")]
    LambertDomain(f64),

    #[error("saddle-point solver failed: {0}")]
    SaddleBracket(String),
}

pub type Result<T> = std::result::Result<T, GrowthError>;
