use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra dimension {0} is outside 1..=8")]
    BadDimension(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a vector")]
    NotAVector(String),
    #[error("multivector {0} is not invertible")]
    Singular(String),
    #[error("{value} does not square to -1 (residual {residual:.3e})")]
    NotARoot { value: String, residual: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("shift {0:?} is not a multiple of the grid spacing")]
    OffGrid(Vec<f64>),
    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),
    #[error("series truncation: {0}")]
    Truncation(String),
    #[error("integrand does not decay: tail estimate {tail:.3e} exceeds {tol:.3e}")]
    NonDecaying { tail: f64, tol: f64 },
    #[error("kernel mode k = {0} has a vanishing inverse normalizer")]
    NotInvertible(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
