use thiserror::Error;

/// Errors produced by problem construction, the proximal kit and the solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite entry {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("shape {rows}x{cols} does not match length {len}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("point carries no matrix shape")]
    MissingShape,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular value decomposition did not converge")]
    SvdFailure,

    #[error("iteration {iter}: {reason}")]
    Divergence { iter: usize, reason: String },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
