use thiserror::Error;

use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate point at indices {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("coincident points in angle predicate")]
    CoincidentPoints,

    #[error("point set is not centrally symmetric: {0}")]
    NotCentrallySymmetric(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("triple ({0}, {1}, {2}) has non-positive slack {3}")]
    NonPositiveSlack(usize, usize, usize, Scalar),

    #[error("empty triple set")]
    EmptyTripleSet,

    #[error("base angle family `{family}` is not acute (slack {slack})")]
    BaseAngleFailure { family: &'static str, slack: Scalar },

    #[error("perturbation of pair {pair} failed after {attempts} attempts (best slack seen: {best_slack})")]
    PerturbationFailed {
        pair: usize,
        attempts: usize,
        best_slack: String,
    },

    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),

    #[error("guard rail exceeded: {0}")]
    GuardRail(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
