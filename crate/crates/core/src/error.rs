use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("n = {n} is not divisible by {divisor}")]
    Divisibility { n: usize, divisor: usize },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid pattern graph: {0}")]
    Pattern(String),

    #[error("cycle needs at least 3 blocks, got {0}")]
    TooFewBlocks(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no records to summarize")]
    EmptyRecords,

    #[error("records do not come from a single sweep: {0}")]
    MixedRecords(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
