use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("engine mismatch: {0}")]
    EngineMismatch(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operation requires a finite engine")]
    InfiniteEngine,
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("tuple does not generate the group: {0}")]
    NotGenerating(String),
    #[error("cannot verify generation on an infinite engine: {0}")]
    UnverifiableGeneration(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("classification outside partition domain: {0}")]
    ClassificationDomain(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
