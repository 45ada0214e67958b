use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use num_rational::BigRational;

use crate::error::LinalgError;
use crate::linalg::IndexSet;
use crate::scalar::Scalar;

/// Dense `n x n` matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

/// Dense column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T>(Vec<T>);

impl<T> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector(entries)
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

impl<T> Deref for Vector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> FromIterator<T> for Vector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl<T: Scalar> Vector<T> {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    pub fn from_i64(values: &[i64]) -> Self {
        values.iter().map(|&v| T::from_i64(v)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_zero_at(&self, scale: f64) -> bool {
        self.0.iter().all(|x| x.negligible(scale))
    }

    pub fn to_float(&self) -> Vector<f64> {
        self.0.iter().map(Scalar::as_f64).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.0.iter().map(Scalar::to_json).collect())
    }

    /// Max-norm distance, in `f64`.
    pub fn distance_max(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a.clone() - b.clone()).as_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<T> Matrix<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.n + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(LinalgError::NotSquare { row: row + 1, len: r.len(), n });
            }
            entries.extend(r);
        }
        Ok(Matrix { n, entries })
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
        .expect("square integer rows")
    }

    /// Builds from a 0-based entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_size(other)?;
        Ok(Self::from_fn(self.n, |i, j| self[(i, j)].clone() + other[(i, j)].clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_size(other)?;
        Ok(Self::from_fn(self.n, |i, j| self[(i, j)].clone() - other[(i, j)].clone()))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_size(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vector<T>, LinalgError> {
        if x.len() != self.n {
            return Err(LinalgError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `(A + A^T) / 2`.
    pub fn symmetric_part(&self) -> Self {
        let half = T::from_ratio(1, 2);
        Self::from_fn(self.n, |i, j| (self[(i, j)].clone() + self[(j, i)].clone()) * half.clone())
    }

    /// Rows and columns restricted to `s`, order preserved.
    pub fn principal_submatrix(&self, s: &IndexSet) -> Result<Self, LinalgError> {
        if s.max_index() > self.n {
            return Err(LinalgError::BadIndexSet {
                indices: s.indices().to_vec(),
                n: self.n,
                reason: "index out of range",
            });
        }
        Ok(self.submatrix_zero_based(&s.zero_based()))
    }

    pub(crate) fn submatrix_zero_based(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a.clone() - b.clone()).as_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> Matrix<f64> {
        Matrix { n: self.n, entries: self.entries.iter().map(Scalar::as_f64).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows()
                .map(|r| serde_json::Value::Array(r.iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }

    fn check_same_size(&self, other: &Self) -> Result<(), LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }
}

impl Matrix<BigRational> {
    pub fn from_ratio_rows(rows: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| BigRational::from_ratio(p, q)).collect())
                .collect(),
        )
        .expect("square rational rows")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_times_a_is_a() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(Matrix::identity(3).matmul(&a).unwrap(), a);
    }

    #[test]
    fn shift_truncations_multiply_to_projection() {
        // trunc(T_R,3) * trunc(T_L,3): T_R T_L kills the first coordinate
        let right = Matrix::<BigRational>::from_i64_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let left = right.transpose();
        let expected = Matrix::diagonal(&Vector::<BigRational>::from_i64(&[0, 1, 1]));
        assert_eq!(right.matmul(&left).unwrap(), expected);
    }

    #[test]
    fn matmul_rejects_size_mismatch() {
        let a = Matrix::<f64>::identity(2);
        let b = Matrix::<f64>::identity(3);
        assert_eq!(
            a.matmul(&b),
            Err(LinalgError::DimensionMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = Matrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert!(matches!(err, LinalgError::NotSquare { row: 2, .. }));
        assert_eq!(Matrix::<f64>::from_rows(vec![]).unwrap_err(), LinalgError::Empty);
    }

    #[test]
    fn principal_submatrix_examples() {
        let i3 = Matrix::<BigRational>::identity(3);
        let s = IndexSet::new(vec![1, 3], 3).unwrap();
        assert_eq!(i3.principal_submatrix(&s).unwrap(), Matrix::identity(2));

        let a = Matrix::<BigRational>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let s = IndexSet::new(vec![2], 2).unwrap();
        assert_eq!(
            a.principal_submatrix(&s).unwrap(),
            Matrix::from_i64_rows(&[&[4]])
        );

        // lower bidiagonal with 2s below a unit diagonal
        let t = Matrix::<BigRational>::from_i64_rows(&[&[1, 0, 0], &[2, 1, 0], &[0, 2, 1]]);
        let s = IndexSet::new(vec![2, 3], 3).unwrap();
        assert_eq!(
            t.principal_submatrix(&s).unwrap(),
            Matrix::from_i64_rows(&[&[1, 0], &[2, 1]])
        );
    }

    #[test]
    fn principal_submatrix_out_of_range() {
        let a = Matrix::<f64>::identity(2);
        let s = IndexSet::new(vec![1, 3], 3).unwrap();
        assert!(matches!(
            a.principal_submatrix(&s),
            Err(LinalgError::BadIndexSet { .. })
        ));
    }
}
