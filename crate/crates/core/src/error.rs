use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubalError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table is not associative: a(a({i},{j}),{k}) != a({i},a({j},{k}))")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("size mismatch: expected m = {expected}, found m = {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("m = {m} exceeds the budget of {limit}; {hint}")]
    Capacity { m: usize, limit: usize, hint: String },
    #[error("subset {subset} is not invariant under the operation")]
    NotInvariant { subset: String },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CubalError>;
