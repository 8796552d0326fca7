use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must lie in the upper half-plane, got tau = {0}")]
    InvalidModulus(Complex64),
    #[error("theta series needs {needed} terms, limit is {limit}")]
    TruncationOverflow { needed: usize, limit: usize },
    #[error("theta kind must be 1..=4, got {0}")]
    InvalidThetaKind(u8),
    #[error("derivative order {order} outside supported range {min}..={max}")]
    InvalidDerivativeOrder { order: u8, min: u8, max: u8 },
    #[error("sigma index must be 0..=3, got {0}")]
    InvalidSigmaIndex(u8),
    #[error("half-periods need Im(omega2/omega1) > 0, got ratio {0}")]
    InvalidHalfPeriods(Complex64),
    #[error("denominator {what} = {value:e} is below the pole floor")]
    PoleProximity { what: &'static str, value: f64 },
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("operators act with different step or modulus")]
    OperatorMismatch,
    #[error("linear solve is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),
    #[error("no admissible sample point after {0} attempts")]
    SamplerExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
