use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar parse error at position {pos}: {msg}")]
    ScalarParse { pos: usize, msg: String },

    #[error("line {line}: {msg}")]
    FileParse { line: usize, msg: String },

    #[error("invalid tensor format: {0}")]
    InvalidFormat(String),

    #[error("format mismatch: {0}")]
    FormatMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("zero tensor where a state is required")]
    ZeroTensor,

    #[error("zero party vector")]
    ZeroVector,

    #[error("identically zero binary form has no discriminant")]
    ZeroForm,

    #[error("point is not a critical point of the state")]
    NotCritical,

    #[error("hyperdeterminant does not exist for format {0} (polygon inequality violated)")]
    HyperdetDoesNotExist(String),

    #[error("hyperdeterminant not implemented for format {0}")]
    HyperdetNotImplemented(String),

    #[error("unknown class name {0:?}")]
    UnknownClass(String),

    #[error("cross-format query: {0}")]
    CrossFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
