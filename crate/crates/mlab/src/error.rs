use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("closure has more than {cap} elements (order cap exceeded)")]
    ClosureExceedsCap { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group order {order} exceeds the cohomology cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("invalid group table: {0}")]
    BadTable(String),
    #[error("element index {0} out of range for group of order {1}")]
    BadIndex(usize, usize),
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("the claimed submodule is not contained in the ambient submodule")]
    NotSubmodule,
    #[error("relation matrix presents an infinite quotient")]
    InfiniteQuotient,
    #[error("action does not preserve the submodule (implementation bug)")]
    SubmoduleViolation,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate group name {0:?}")]
    DuplicateName(String),
    #[error("no group named {0:?}")]
    UnknownGroup(String),
    #[error("corrupt cache entry: {0}")]
    CorruptCache(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
