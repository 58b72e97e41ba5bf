use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems so callers can match on them directly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("exact computation requested on {n} vertices, cap is {cap}")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate Gaussian sample (norm below threshold)")]
    DegenerateSample,

    #[error("bad part-size plan: {0}")]
    BadPlan(String),

    #[error("bad auxiliary graph: {0}")]
    BadAuxGraph(String),

    #[error("weighted graphs have different vertex counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("weighted-clique search capped at {cap} vertices, got {n}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("pair ({0}, {1}) is an edge of G_1/2; S1 requires a zero-weight pair")]
    PairInHalfGraph(usize, usize),

    #[error("class pair ({0}, {1}) does not have weight 1/2; S2 requires a half-weight pair")]
    PairNotHalf(usize, usize),

    #[error("graph is not in post-S1 normal form: {0}")]
    NotNormalized(String),

    #[error("forbidden weighted-clique size t={0} is below the minimum of 4")]
    InvalidT(usize),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("bad coloring family: {0}")]
    BadFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
