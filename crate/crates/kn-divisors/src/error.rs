use thiserror::Error;

/// Errors shared by every layer of the crate. All integer arithmetic is
/// checked; a silent wraparound is never possible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in divisor arithmetic")]
    Overflow,
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("vertex count must be at least 2 (got {0})")]
    TooFewVertices(usize),
    #[error("divisors live on different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("firing set must be a nonempty proper subset of the vertices")]
    InvalidFiringSet,
    #[error("divisor is not effective away from v_{0}")]
    NotEffectiveAway(usize),
    #[error("concentration postcondition failed on {0:?}")]
    ConcentrationFailed(Vec<i64>),
    #[error("splitting type {0:?} is not feasible (a gap exceeds 1)")]
    InfeasibleSplittingType(Vec<i64>),
    #[error("multiplicity table is not symmetric with a zero diagonal")]
    MalformedGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("brute-force guard exceeded: {0}")]
    GuardExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
