use thiserror::Error;

use crate::scalar::ScalarKind;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse scalar `{0}`")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix must have at least one row")]
    Empty,
    #[error("scalar kinds differ: {0} vs {1}")]
    KindMismatch(ScalarKind, ScalarKind),
    #[error("index set {indices:?} is invalid for dimension {n}: {reason}")]
    BadIndexSet {
        indices: Vec<usize>,
        n: usize,
        reason: &'static str,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not orthogonal within tolerance {tol:e} (deviation {deviation:e})")]
    NotOrthogonal { tol: f64, deviation: f64 },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV at line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("declared n = {declared} but entries describe n = {actual}")]
    DeclaredSize { declared: usize, actual: usize },
    #[error("unknown scalar kind `{0}` (expected \"float\" or \"rational\")")]
    UnknownKind(String),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Other(String),
}
