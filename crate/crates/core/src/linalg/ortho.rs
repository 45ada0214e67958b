use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

impl<T: Scalar> Matrix<T> {
    /// `max |U^T U - I|`, computed in `f64`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n();
        let u = self.to_float();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| u[(k, i)] * u[(k, j)]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// True iff `max |U^T U - I| <= tol`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }
}

/// Random orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
/// With `rotation` set, the sign of the first column is fixed so that `det = +1`.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rotation: bool, rng: &mut R) -> Matrix<f64> {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        let mut ok = true;
        for j in 0..n {
            // modified Gram-Schmidt, two passes
            for _ in 0..2 {
                for k in 0..j {
                    let dot: f64 = (0..n).map(|i| cols[j][i] * cols[k][i]).sum();
                    for i in 0..n {
                        cols[j][i] -= dot * cols[k][i];
                    }
                }
            }
            let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|x| *x /= norm);
        }
        if !ok {
            continue;
        }
        let mut u = Matrix::from_fn(n, |i, j| cols[j][i]);
        if rotation && u.determinant() < 0.0 {
            u = Matrix::from_fn(n, |i, j| if j == 0 { -cols[j][i] } else { cols[j][i] });
        }
        return u;
    }
}
