use thiserror::Error;

use crate::weights::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("invalid conductor {0}")]
    InvalidConductor(u32),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("word {0} is not standard")]
    NotStandard(String),

    /// A computation needed a degree that the precomputed tables do not cover.
    #[error("degree {degree} exceeds table bound {bound}")]
    BoundExceeded { degree: Weight, bound: Weight },

    #[error("hypothesis violated: chi(beta, beta) = 1 for root {0}")]
    HypothesisViolation(Weight),

    #[error("character table is incomplete; finite-dimensionality undetermined")]
    IncompleteCharacter,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("solution is not unique (kernel dimension {0})")]
    NotUnique(usize),

    /// Two independent computations disagreed; this always indicates a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
