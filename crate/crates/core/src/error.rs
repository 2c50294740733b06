use thiserror::Error;

use crate::algebra::FpPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid n = {0}: n must be at least 1")]
    InvalidN(usize),

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("classes live over different n ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigenvalues collide at positions {0} and {1}")]
    EigenvalueCollision(usize, usize),

    #[error("characteristic polynomial is not squarefree (gcd(f, f') = {witness})")]
    NotSquarefree { witness: FpPoly },

    #[error("endomorphism is not regular semisimple: {0}")]
    NotRegularSemisimple(String),

    #[error("pairing does not clear to a polynomial: {0}")]
    NonIntegralPairing(String),

    #[error("class is not an integral combination of the basis (coordinate {coordinate})")]
    NotIntegral { coordinate: String },

    #[error("singular linear system")]
    Singular,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("denominator vanishes under substitution")]
    VanishingDenominator,

    #[error("malformed input: {0}")]
    MalformedInput(String),
}

impl Error {
    pub(crate) fn not_integral(value: impl std::fmt::Display) -> Self {
        Error::NotIntegral {
            coordinate: value.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returned by exact division when the divisor does not divide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("division is not exact")]
pub struct DivisionFails;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        Err(Error::InvalidN(n))
    } else {
        Ok(())
    }
}
