use alloc::string::String;

/// Errors raised by basis construction, operator evaluation and shape checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("non-finite value {value} at z = {z}")]
    NonFiniteValue { z: f64, value: f64 },
    #[error("abscissa {0} lies outside [0, 1]")]
    OutOfDomain(f64),
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("expansion order m = {m} is invalid for degree n = {n} (need 2 <= m < n)")]
    InvalidOrder { n: usize, m: usize },
    #[error("invalid degree {0}")]
    InvalidDegree(usize),
    #[error("degree sequence must be strictly increasing with every entry >= {min}")]
    InvalidDegrees { min: usize },
    #[error("derivative order {0} is not supported (expected 1 or 2)")]
    UnsupportedOrder(u32),
    #[error("family `{0}` has no polynomial representation")]
    UnsupportedPhi(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("grid size must be at least 2, got {0}")]
    InvalidGrid(usize),
    #[error("family `{0}` failed validation")]
    InvalidFamily(String),
    #[error("data is not increasing at index {0}")]
    NotIncreasing(usize),
    #[error("data is not convex at index {0}")]
    NotConvex(usize),
    #[error("data vector needs at least {min} values, got {len}")]
    TooFewValues { len: usize, min: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
