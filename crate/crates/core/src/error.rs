use thiserror::Error;

/// Errors produced by the computational modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in input")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("operation requires the Euclidean norm")]
    NonEuclideanNorm,
    #[error("operation does not support the {0} norm")]
    UnsupportedNorm(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("wrong matrix shape: expected {expected}, got {rows}x{cols}")]
    WrongShape {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is singular (pivot column {column})")]
    SingularMatrix { column: usize },
    #[error("linear system I - A is singular; the map has no unique fixed point")]
    SingularSystem,
    #[error("composite Simpson needs an odd number of samples >= 3, got {0}")]
    BadSampleCount(usize),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("normalizing scale is zero")]
    ZeroDelta,
    #[error("exact sign-pattern enumeration supports at most 16 vectors, got {0}")]
    TooManyPoints(usize),
    #[error("exhaustive search needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: usize },
    #[error("separated variant requires eta")]
    MissingEta,
    #[error("linear programme cycled")]
    LpDegenerate,
    #[error("linear programme is infeasible")]
    LpInfeasible,
    #[error("linear programme is unbounded")]
    LpUnbounded,
    #[error("certificate does not satisfy its level constraint")]
    InvalidCertificate,
    #[error("zero vector at index {0}")]
    ZeroVector(usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("points must lie in the closed unit ball")]
    NotUnitBall,
    #[error("unknown replication case: {0}")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
