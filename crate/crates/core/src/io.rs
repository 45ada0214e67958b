//! Matrix and vector file formats.
//!
//! Matrices are JSON objects `{"n": 3, "entries": [[...], ...], "scalar": "rational"}`
//! with rational entries written as `"p/q"` strings (integers may be bare
//! numbers). Plain CSV rows are accepted and read as float matrices.

use std::path::Path;

use num_rational::BigRational;
use serde::Deserialize;

use crate::error::FormatError;
use crate::linalg::{AnyMatrix, Matrix, Vector};
use crate::scalar::{float_from_json, rational_from_json, ScalarKind};

#[derive(Deserialize)]
struct MatrixFile {
    n: Option<usize>,
    entries: Vec<Vec<serde_json::Value>>,
    scalar: Option<String>,
}

pub fn parse_matrix_json(text: &str) -> Result<AnyMatrix, FormatError> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let kind = match file.scalar.as_deref() {
        None | Some("rational") => ScalarKind::Rational,
        Some("float") => ScalarKind::Float,
        Some(other) => return Err(FormatError::UnknownKind(other.to_string())),
    };
    if let Some(declared) = file.n {
        if declared != file.entries.len() {
            return Err(FormatError::DeclaredSize { declared, actual: file.entries.len() });
        }
    }
    Ok(match kind {
        ScalarKind::Rational => {
            let rows = file
                .entries
                .iter()
                .map(|r| r.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            AnyMatrix::Rational(Matrix::from_rows(rows)?)
        }
        ScalarKind::Float => {
            let rows = file
                .entries
                .iter()
                .map(|r| r.iter().map(float_from_json).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            AnyMatrix::Float(Matrix::from_rows(rows)?)
        }
    })
}

pub fn parse_matrix_csv(text: &str) -> Result<Matrix<f64>, FormatError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|c| {
                c.trim().parse::<f64>().map_err(|e| FormatError::Csv {
                    line: lineno + 1,
                    msg: format!("`{}`: {e}", c.trim()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows)?)
}

/// Reads a matrix, choosing the parser by content: JSON objects start with `{`.
pub fn read_matrix(path: &Path) -> Result<AnyMatrix, FormatError> {
    let text = read_text(path)?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text).map(AnyMatrix::Float)
    }
}

pub fn matrix_to_json(m: &AnyMatrix) -> serde_json::Value {
    serde_json::json!({
        "n": m.n(),
        "entries": m.to_json(),
        "scalar": m.kind().to_string(),
    })
}

/// A vector file: a JSON array, a JSON object with an `entries` array, or one
/// CSV row / column of numbers.
pub fn parse_vector(text: &str) -> Result<Vec<serde_json::Value>, FormatError> {
    let t = text.trim_start();
    if t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    if t.starts_with('{') {
        #[derive(Deserialize)]
        struct VectorFile {
            entries: Vec<serde_json::Value>,
        }
        let v: VectorFile = serde_json::from_str(t)?;
        return Ok(v.entries);
    }
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        for c in line.split(',').map(str::trim).filter(|c| !c.is_empty()) {
            let x: f64 = c.parse().map_err(|e| FormatError::Csv {
                line: lineno + 1,
                msg: format!("`{c}`: {e}"),
            })?;
            out.push(serde_json::Value::from(x));
        }
    }
    Ok(out)
}

pub fn vector_as_rational(values: &[serde_json::Value]) -> Result<Vector<BigRational>, FormatError> {
    Ok(values.iter().map(rational_from_json).collect::<Result<Vector<_>, _>>()?)
}

pub fn vector_as_float(values: &[serde_json::Value]) -> Result<Vector<f64>, FormatError> {
    Ok(values.iter().map(float_from_json).collect::<Result<Vector<_>, _>>()?)
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
