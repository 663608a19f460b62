use thiserror::Error;

/// Errors raised by the ideal calculus and the case drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,

    #[error("box has {points} points, exceeding the cap of {cap}")]
    BoxCapExceeded { points: u128, cap: usize },

    #[error("box ideals belong to different box specs")]
    SpecMismatch,

    #[error("nilpotency index is undefined for the unit ideal")]
    UnitIdeal,

    #[error("reduction number did not stabilize within n <= {n_max}")]
    NoStabilization { n_max: u32 },

    #[error("outside the hypothesis of the classifier: {0}")]
    OutsideHypothesis(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
