use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid part indices ({i}, {j}) for a partition with {len} parts")]
    InvalidIndex { i: usize, j: usize, len: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u64, u64),
    #[error("partition {partition} has weight {weight}, expected {expected}")]
    WeightMismatch { partition: String, weight: u64, expected: u64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{what} has {n} vertices, above the bound of {bound}")]
    BoundExceeded { what: &'static str, n: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
