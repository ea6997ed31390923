use thiserror::Error;

use crate::rational::Rational;

/// Errors produced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability space needs at least one atom")]
    EmptySpace,
    #[error("weight {value} at atom {index} is negative")]
    NegativeWeight { index: usize, value: Rational },
    #[error("weights sum to {sum}, not 1")]
    NotNormalized { sum: Rational },
    #[error("variable has {found} entries but the space has {expected} atoms")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dichotomic value {0} is not +1 or -1")]
    InvalidSign(i64),
    #[error("conditioning event has probability zero")]
    ZeroConditioningEvent,
    #[error("invalid rational {0:?}")]
    ParseRational(String),

    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("state norm squared is {norm_sqr}, expected 1")]
    StateNotNormalized { norm_sqr: f64 },
    #[error("amplitude is not finite")]
    NonFiniteAmplitude,
    #[error("outcome has zero probability ({probability:e}); collapse is undefined")]
    ZeroAmplitudeOutcome { probability: f64 },

    #[error("probability {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("closed form and eigenvector route disagree by {0:e}")]
    CrossCheckFailed(f64),

    #[error("pairwise target {value} for {pair} outside [0, 1/2]")]
    OutOfRangeTarget { pair: &'static str, value: Rational },
    #[error("rationalization denominator must be at least 2, got {0}")]
    BadDenominator(u64),
    #[error("linear program is infeasible but no Wigner facet is violated")]
    MissingCertificate,

    #[error("trial count must be positive")]
    ZeroTrials,
    #[error("no trials with first outcome {0}")]
    EmptyConditionRow(crate::Sign),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
