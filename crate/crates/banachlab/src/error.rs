use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("zero vector not allowed here")]
    ZeroVector,

    #[error("zero operator not allowed here")]
    ZeroOperator,

    #[error("scalar field mismatch: {0}")]
    FieldMismatch(String),

    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("subspace membership violated: {0}")]
    Membership(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sequence does not converge: {0}")]
    NonConvergent(String),

    #[error("estimate carries no witness")]
    MissingWitness,

    #[error("no valid candidate map: {0}")]
    NoCandidate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
