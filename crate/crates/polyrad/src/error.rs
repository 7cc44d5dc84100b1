use thiserror::Error;

/// Errors produced by geometry, radius evaluation and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate Mobius map: ad - bc = 0")]
    DegenerateMobius,

    #[error("pole of the Mobius map at the evaluation point")]
    PoleAtPoint,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid ray system: {0}")]
    InvalidRaySystem(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("point is not interior to the domain")]
    NotInterior,

    #[error("point {point_index} is not interior to its domain at coordinate {coordinate}")]
    NotInteriorAt {
        point_index: usize,
        coordinate: usize,
    },

    #[error("no analytic inner-radius formula for shape `{0}`")]
    NoAnalyticFormula(&'static str),

    #[error("chi requires a positive argument, got {0}")]
    NonpositiveArg(f64),

    #[error("evaluation overflowed: {0}")]
    Overflow(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error(
        "disjointness of domains {i} and {j} at coordinate {coordinate} could not be decided \
         (sampled test found no witness; shapes are outside the exact catalog)"
    )]
    DisjointnessUnresolved {
        i: usize,
        j: usize,
        coordinate: usize,
    },

    #[error("{truncated} of {walks} walks exceeded max_steps (more than 1%)")]
    TruncationExceeded { truncated: usize, walks: usize },

    #[error("inner radius at infinity is only supported for exterior disks: {0}")]
    UnsupportedAtInfinity(String),

    #[error("extended-precision evaluation failed: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
