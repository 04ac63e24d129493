use thiserror::Error;

/// Crate-wide error type. Exit codes for the CLI are derived from the
/// variant: size limits map to 2, invariant violations to 3, everything
/// else (bad input, usage) to 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} needs {needed}, cap is {limit}")]
    SizeLimit {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("the given elements do not generate the group")]
    NotGenerating,
    #[error("images do not extend to a homomorphism: fails on the pair ({x}, {y})")]
    NotAHomomorphism { x: u32, y: u32 },
    #[error("embedding is not injective")]
    NotInjective,
    #[error("morphism does not commute with the base-group embeddings")]
    NotAGMorphism,
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("point set is not open")]
    NotOpen,
    #[error("sections disagree on an overlap at point {point}")]
    IncompatibleSections { point: usize },
    #[error("explicit representatives are required for integer coefficients")]
    RepsRequired,
    #[error("closed-set family is not a topology: {0}")]
    BadTopology(String),
    #[error("invalid bracket table: {0}")]
    BadLieAlgebra(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("field does not support exhaustive enumeration")]
    NonEnumerableField,
    #[error("sum embedding is not injective: {lost} of {expected} base dimensions collapse")]
    SumNotInjective { lost: usize, expected: usize },
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Usage(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } => 2,
            Error::InvariantViolation(_) => 3,
            _ => 1,
        }
    }
}
