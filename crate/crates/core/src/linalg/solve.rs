use crate::error::LinalgError;
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Gauss-Jordan elimination on `[A | B]` with partial pivoting.
///
/// Pivots are chosen by largest magnitude in both scalar kinds; a pivot that is
/// negligible relative to the largest entry of `A` makes the system singular.
fn eliminate<T: Scalar>(a: &Matrix<T>, rhs: &mut [Vec<T>]) -> Result<(), LinalgError> {
    let n = a.n();
    let mut m: Vec<Vec<T>> = a.rows().map(|r| r.to_vec()).collect();
    let scale = a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&r, &s| {
                m[r][k]
                    .abs()
                    .partial_cmp(&m[s][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    // earliest row wins ties
                    .then(s.cmp(&r))
            })
            .expect("nonempty range");
        if m[p][k].negligible(scale) {
            return Err(LinalgError::Singular);
        }
        m.swap(k, p);
        rhs.swap(k, p);
        let pivot = m[k][k].clone();
        for j in k..n {
            m[k][j] = m[k][j].clone() / pivot.clone();
        }
        for x in rhs[k].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..n {
                let d = f.clone() * m[k][j].clone();
                m[i][j] = m[i][j].clone() - d;
            }
            let (row_k, row_i) = if i < k {
                let (lo, hi) = rhs.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rhs.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for (x, y) in row_i.iter_mut().zip(row_k.iter()) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
    }
    Ok(())
}

impl<T: Scalar> Matrix<T> {
    /// Solves `A x = b`; exact for rationals.
    pub fn solve(&self, b: &[T]) -> Result<Vector<T>, LinalgError> {
        if b.len() != self.n() {
            return Err(LinalgError::DimensionMismatch { expected: self.n(), got: b.len() });
        }
        let mut rhs: Vec<Vec<T>> = b.iter().map(|x| vec![x.clone()]).collect();
        eliminate(self, &mut rhs)?;
        Ok(rhs.into_iter().map(|mut r| r.remove(0)).collect())
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.n();
        let mut rhs: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        eliminate(self, &mut rhs)?;
        Matrix::from_rows(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn identity_solve_returns_rhs() {
        let b = Vector::<BigRational>::from_i64(&[3, -1, 4]);
        assert_eq!(Matrix::identity(3).solve(&b).unwrap(), b);
    }

    #[test]
    fn diagonal_solve() {
        let a = Matrix::<f64>::from_i64_rows(&[&[2, 0], &[0, 4]]);
        let x = a.solve(&[2.0, 8.0]).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 2.0]);
    }

    #[test]
    fn right_shift_truncation_is_singular() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let b = Vector::<BigRational>::from_i64(&[1, 0, 0]);
        assert_eq!(a.solve(&b), Err(LinalgError::Singular));
        assert_eq!(a.to_float().solve(&[1.0, 0.0, 0.0]), Err(LinalgError::Singular));
    }

    #[test]
    fn exact_inverse_gives_identity() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.matmul(&a).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn float_residual_within_bound() {
        let a = Matrix::<f64>::from_rows(vec![
            vec![4.0, -2.0, 1.0],
            vec![-2.0, 4.0, -2.0],
            vec![1.0, -2.0, 4.0],
        ])
        .unwrap();
        let b = [11.0, -16.0, 17.0];
        let x = a.solve(&b).unwrap();
        let r = a.mul_vec(&x).unwrap();
        for (ri, bi) in r.iter().zip(b) {
            assert!((ri - bi).abs() <= crate::scalar::TOL * (1.0 + 17.0));
        }
    }

    #[test]
    fn zero_matrix_is_singular() {
        let a = Matrix::<BigRational>::zeros(2);
        assert!(a.inverse().is_err());
        assert!(BigRational::zero().is_zero());
    }
}
