use thiserror::Error;

/// Errors produced by complex construction and the invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary matrix in degree {degree} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    DimensionMismatch {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("boundary of boundary is nonzero in degree {degree} at entry ({row}, {col})")]
    BoundarySquareNonzero { degree: usize, row: usize, col: usize },

    #[error("duplicate cell id `{id}` in dimension {dim}")]
    DuplicateCell { dim: usize, id: String },

    #[error("unknown cell `{id}`")]
    UnknownCell { id: String },

    #[error("cell of dimension {dim} has no 0-cell to attach to")]
    DetachedCell { dim: usize },

    #[error("{what} {value} out of range (allowed {min}..={max})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("{count} cells in dimension {dim} exceeds the enumeration cap of {cap}")]
    TooLarge { dim: usize, count: usize, cap: usize },

    #[error("cell `{id}` is a face of `{coface}` and cannot be deleted")]
    NotDeletable { id: String, coface: String },

    #[error("`{face}` is not a free face of `{cell}`: {reason}")]
    NotFreeFace {
        cell: String,
        face: String,
        reason: String,
    },

    #[error("cell `{id}` is not top-dimensional")]
    NotTopCell { id: String },

    #[error("unknown builtin `{0}`")]
    UnknownName(String),

    #[error("`{0}` names both a builtin and a file")]
    Ambiguous(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("subset is not a basis of the matroid")]
    NotABasis,

    #[error("subcomplex is not a cellular spanning tree")]
    NotACst,

    #[error("complex is not acyclic in positive codimension")]
    NotApc,

    #[error("{0}")]
    Range(String),

    #[error("invalid dual pair: {0}")]
    InvalidDual(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, printed by the command line front-end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::BoundarySquareNonzero { .. } => "BoundarySquareNonzero",
            Error::DuplicateCell { .. } => "DuplicateCell",
            Error::UnknownCell { .. } => "UnknownCell",
            Error::DetachedCell { .. } => "DetachedCell",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotDeletable { .. } => "NotDeletable",
            Error::NotFreeFace { .. } => "NotFreeFace",
            Error::NotTopCell { .. } => "NotTopCell",
            Error::UnknownName(_) => "UnknownName",
            Error::Ambiguous(_) => "Ambiguous",
            Error::Parse { .. } => "ParseError",
            Error::NotABasis => "NotABasis",
            Error::NotACst => "NotACst",
            Error::NotApc => "NotApc",
            Error::Range(_) => "RangeError",
            Error::InvalidDual(_) => "InvalidDual",
            Error::Io(_) => "IoError",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
