use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cells per side must be a power of two, got {0}")]
    NotPowerOfTwo(usize),
    #[error("dimension must be 1 or 2, got {0}")]
    BadDimension(usize),
    #[error("invalid domain [{a}, {b}]")]
    BadDomain { a: f64, b: f64 },
    #[error("non-finite value {value} at cell {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cell {0} has its center at radius 0")]
    CenterAtOrigin(usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parameter gate violated: {0}")]
    Gate(String),
    #[error("profile is not monotone: {0}")]
    NotMonotone(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("negative coefficient {value} at index {index}")]
    NegativeCoefficient { index: usize, value: f64 },
    #[error("sequence is not convex and decreasing at index {0}")]
    NotConvex(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
