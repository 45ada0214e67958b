//! Dense square matrices over exact rationals or `f64`.

mod det;
mod index_set;
mod matrix;
mod ortho;
mod solve;

pub use det::{exact_sign, Determinant, MinorSource};
pub use index_set::IndexSet;
pub use matrix::{Matrix, Vector};
pub use ortho::random_orthogonal;

pub(crate) use det::hadamard_bound;

use num_rational::BigRational;

use crate::error::LinalgError;
use crate::scalar::ScalarKind;

/// A matrix of either scalar kind, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Float(Matrix<f64>),
    Rational(Matrix<BigRational>),
}

impl AnyMatrix {
    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Float(m) => m.n(),
            AnyMatrix::Rational(m) => m.n(),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyMatrix::Float(_) => ScalarKind::Float,
            AnyMatrix::Rational(_) => ScalarKind::Rational,
        }
    }

    pub fn to_float(&self) -> Matrix<f64> {
        match self {
            AnyMatrix::Float(m) => m.clone(),
            AnyMatrix::Rational(m) => m.to_float(),
        }
    }

    /// Product of two matrices of the same kind.
    pub fn matmul(&self, other: &AnyMatrix) -> Result<AnyMatrix, LinalgError> {
        match (self, other) {
            (AnyMatrix::Float(a), AnyMatrix::Float(b)) => a.matmul(b).map(AnyMatrix::Float),
            (AnyMatrix::Rational(a), AnyMatrix::Rational(b)) => a.matmul(b).map(AnyMatrix::Rational),
            (a, b) => Err(LinalgError::KindMismatch(a.kind(), b.kind())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnyMatrix::Float(m) => m.to_json(),
            AnyMatrix::Rational(m) => m.to_json(),
        }
    }
}

impl From<Matrix<f64>> for AnyMatrix {
    fn from(m: Matrix<f64>) -> Self {
        AnyMatrix::Float(m)
    }
}

impl From<Matrix<BigRational>> for AnyMatrix {
    fn from(m: Matrix<BigRational>) -> Self {
        AnyMatrix::Rational(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_kind_product_rejected() {
        let a = AnyMatrix::Float(Matrix::identity(2));
        let b = AnyMatrix::Rational(Matrix::identity(2));
        assert_eq!(
            a.matmul(&b),
            Err(LinalgError::KindMismatch(ScalarKind::Float, ScalarKind::Rational))
        );
        assert!(b.matmul(&b).is_ok());
    }
}
