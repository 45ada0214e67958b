//! Operators on `l2` from the examples: symbolic specs, finite sections, and
//! P-tests relative to a transformed orthonormal basis `{U e_n}`.
//!
//! "P relative to `{U e_n}`" is tested through the substitution
//! `<x, U e_k> = <U^T x, e_k>`: with `y = U^T x` it becomes the standard test
//! of `U^T T U`. A finite section is only an approximation of the operator;
//! nothing here claims that P-ness of sections implies P-ness of `T`.

mod sequence;
mod spec;

pub use sequence::SequenceGen;
pub use spec::{OperatorSpec, PRESETS};

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;
use thiserror::Error;

use crate::error::LinalgError;
use crate::linalg::{AnyMatrix, Determinant, Matrix};
use crate::pmatrix::{is_p_any, is_p_with_caps, AnyVerdict, Caps, Method, PError, PVerdict};
use crate::scalar::{Scalar, TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZooError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("{kind} at n = {n}: {reason}")]
    BadSize { kind: &'static str, n: usize, reason: &'static str },
    #[error("diagonal sequence {0} is unbounded")]
    Unbounded(String),
    #[error("bad operator parameters: {0}")]
    BadParams(String),
    #[error("basis matrix is not orthogonal: max |U^T U - I| = {defect:e} > {tol:e}")]
    NotOrthogonal { defect: f64, tol: f64 },
    #[error(transparent)]
    P(#[from] PError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// 2x2 blocks `(1/sqrt 2) [[1, 1], [1, -1]]` down the diagonal. Symmetric and self-inverse.
pub fn block_hadamard_unitary(n: usize) -> Result<Matrix<f64>, ZooError> {
    if n == 0 || n % 2 == 1 {
        return Err(ZooError::BadSize { kind: "block-hadamard", n, reason: "needs even n >= 2" });
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(Matrix::from_fn(n, |i, j| {
        if i / 2 != j / 2 {
            0.0
        } else if i % 2 == 1 && j % 2 == 1 {
            -h
        } else {
            h
        }
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisSpec {
    Standard,
    /// The basis `{U e_n}`; `U` must be orthogonal at `1e-9`.
    TransformedBy(Matrix<f64>),
}

impl BasisSpec {
    pub fn name(&self) -> &'static str {
        match self {
            BasisSpec::Standard => "standard",
            BasisSpec::TransformedBy(_) => "transformed",
        }
    }
}

fn check_orthogonal<T: Scalar>(u: &Matrix<T>) -> Result<(), ZooError> {
    let defect = u.orthogonality_defect();
    if defect > TOL {
        return Err(ZooError::NotOrthogonal { defect, tol: TOL });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `U T U^T`
    UTUt,
    /// `U^T T U`
    UtTU,
}

pub fn conjugate<T: Scalar>(t: &Matrix<T>, u: &Matrix<T>, side: Side) -> Result<Matrix<T>, ZooError> {
    check_orthogonal(u)?;
    let ut = u.transpose();
    Ok(match side {
        Side::UTUt => u.matmul(t)?.matmul(&ut)?,
        Side::UtTU => ut.matmul(t)?.matmul(u)?,
    })
}

/// `max |TU - UT| <= tol` on the `n x n` section.
pub fn commutes(spec: &OperatorSpec, u: &Matrix<f64>, n: usize, tol: f64) -> Result<bool, ZooError> {
    let t = spec.truncate(n)?.to_float();
    let tu = t.matmul(u)?;
    let ut = u.matmul(&t)?;
    Ok(tu.max_abs_diff(&ut) <= tol)
}

/// First `k <= upto` with `x_k (Tx)_k > 0`, computed exactly from the closed form.
pub fn first_prefix_violation(spec: &OperatorSpec, witness: &SequenceGen, upto: usize) -> Option<usize> {
    (1..=upto).find(|&k| {
        let tx = spec
            .row_entries(k)
            .into_iter()
            .fold(BigRational::from_i64(0), |acc, (j, a)| acc + a * witness.term(j));
        (witness.term(k) * tx).is_positive()
    })
}

/// True iff `x_k (Tx)_k <= 0` for all `k <= upto`.
pub fn verify_witness_prefix(spec: &OperatorSpec, witness: &SequenceGen, upto: usize) -> bool {
    first_prefix_violation(spec, witness, upto).is_none()
}

/// Verdict of a relative-basis test. `witness` is in standard coordinates
/// (`x = U y` for a witness `y` of `U^T T U`), scaled to unit max-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeVerdict {
    pub basis: &'static str,
    pub verdict: AnyVerdict,
    pub witness: Option<Vec<f64>>,
}

impl RelativeVerdict {
    pub fn is_p(&self) -> bool {
        self.verdict.is_p()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "basis": self.basis,
            "verdict": self.verdict.to_json(),
            "witness_standard_coordinates": self.witness,
        })
    }
}

fn canonical_f64(mut x: Vec<f64>) -> Vec<f64> {
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return x;
    }
    x.iter_mut().for_each(|v| *v /= max);
    if x.iter().find(|v| !v.negligible(1.0)).is_some_and(|v| *v < 0.0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    x
}

pub fn p_test_relative_matrix(
    t: &AnyMatrix,
    basis: &BasisSpec,
    method: Method,
    caps: &Caps,
) -> Result<RelativeVerdict, ZooError> {
    match basis {
        BasisSpec::Standard => {
            let verdict = is_p_any(t, method, caps)?;
            let witness = verdict.witness_f64();
            Ok(RelativeVerdict { basis: basis.name(), verdict, witness })
        }
        BasisSpec::TransformedBy(u) => {
            if u.n() != t.n() {
                return Err(LinalgError::DimensionMismatch { expected: t.n(), got: u.n() }.into());
            }
            let b = conjugate(&t.to_float(), u, Side::UtTU)?;
            let verdict = is_p_with_caps(&b, method, caps)?;
            let witness = match verdict.witness() {
                Some(y) => Some(canonical_f64(u.mul_vec(y)?.into_inner())),
                None => None,
            };
            Ok(RelativeVerdict { basis: basis.name(), verdict: AnyVerdict::Float(verdict), witness })
        }
    }
}

pub fn p_test_relative(
    spec: &OperatorSpec,
    basis: &BasisSpec,
    n: usize,
    method: Method,
    caps: &Caps,
) -> Result<RelativeVerdict, ZooError> {
    p_test_relative_matrix(&AnyMatrix::Rational(spec.truncate(n)?), basis, method, caps)
}

/// Inverts `t` and decides whether the inverse is P.
pub fn inverse_p_check<T: Determinant>(
    t: &Matrix<T>,
    method: Method,
    caps: &Caps,
) -> Result<(Matrix<T>, PVerdict<T>), ZooError> {
    let inv = t.inverse()?;
    let verdict = is_p_with_caps(&inv, method, caps)?;
    Ok((inv, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn hadamard_properties() {
        let u = block_hadamard_unitary(4).unwrap();
        assert!(u.is_orthogonal(1e-9));
        assert_eq!(u, u.transpose());
        assert!(u.matmul(&u).unwrap().max_abs_diff(&Matrix::identity(4)) < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(&u.mul_vec(&[1.0, 0.0, 0.0, 0.0]).unwrap(), &[h, h, 0.0, 0.0]));
        assert!(block_hadamard_unitary(3).is_err());
        let u2 = block_hadamard_unitary(2).unwrap();
        assert!(close(u2.entries(), &[h, h, h, -h]));
    }

    #[test]
    fn non_orthogonal_basis_rejected() {
        let shear = Matrix::<f64>::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(!shear.is_orthogonal(1e-9));
        assert!(matches!(
            conjugate(&Matrix::identity(2), &shear, Side::UtTU),
            Err(ZooError::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn conjugation_examples() {
        let t = OperatorSpec::BlockRotationMix.truncate(2).unwrap().to_float();
        let u = block_hadamard_unitary(2).unwrap();
        let c = conjugate(&t, &u, Side::UtTU).unwrap();
        assert!(c.max_abs_diff(&Matrix::from_i64_rows(&[&[1, 1], &[-1, 1]])) < 1e-12);
        assert_eq!(conjugate(&t, &Matrix::identity(2), Side::UTUt).unwrap(), t);
        let i = conjugate(&Matrix::identity(4), &block_hadamard_unitary(4).unwrap(), Side::UTUt).unwrap();
        assert!(i.max_abs_diff(&Matrix::identity(4)) < 1e-12);
    }

    #[test]
    fn commutation_examples() {
        let u = block_hadamard_unitary(4).unwrap();
        let c = OperatorSpec::diagonal(SequenceGen::Constant(Q::from_ratio(5, 2))).unwrap();
        assert!(commutes(&c, &u, 4, 1e-9).unwrap());
        assert!(!commutes(&OperatorSpec::LowerBidiagonalTwos, &u, 4, 1e-9).unwrap());
        assert!(!commutes(&OperatorSpec::BlockRotationMix, &u, 4, 1e-9).unwrap());
    }

    #[test]
    fn bidiagonal_twos_relative_bases() {
        let caps = Caps::default();
        let std = p_test_relative(&OperatorSpec::LowerBidiagonalTwos, &BasisSpec::Standard, 6, Method::Both, &caps)
            .unwrap();
        assert!(std.is_p());
        let u = BasisSpec::TransformedBy(block_hadamard_unitary(4).unwrap());
        let rel = p_test_relative(&OperatorSpec::LowerBidiagonalTwos, &u, 4, Method::Both, &caps).unwrap();
        assert!(!rel.is_p());
        assert!(close(rel.witness.as_ref().unwrap(), &[1.0, -1.0, 0.0, 0.0]), "{:?}", rel.witness);
    }

    #[test]
    fn block_rotation_relative_basis_is_p() {
        let u = BasisSpec::TransformedBy(block_hadamard_unitary(4).unwrap());
        let rel = p_test_relative(&OperatorSpec::BlockRotationMix, &u, 4, Method::Both, &Caps::default()).unwrap();
        assert!(rel.is_p());
        assert_eq!(rel.witness, None);
    }

    #[test]
    fn shift_witness_prefixes() {
        let w = SequenceGen::AlternatingHarmonic;
        assert!(verify_witness_prefix(&OperatorSpec::RightShift, &w, 1000));
        assert!(verify_witness_prefix(&OperatorSpec::LeftShift, &w, 1000));
        assert_eq!(first_prefix_violation(&OperatorSpec::IdPlusRightShift, &w, 10), Some(1));
    }

    #[test]
    fn inverse_examples() {
        let caps = Caps::default();
        let (inv, v) = inverse_p_check(&Matrix::<Q>::identity(3), Method::Both, &caps).unwrap();
        assert_eq!(inv, Matrix::identity(3));
        assert!(v.is_p);

        let t = OperatorSpec::IdPlusRightShift.truncate(4).unwrap();
        let (inv, v) = inverse_p_check(&t, Method::Both, &caps).unwrap();
        // Neumann series: sum of (-T_R)^k
        let want = Matrix::<Q>::from_i64_rows(&[&[1, 0, 0, 0], &[-1, 1, 0, 0], &[1, -1, 1, 0], &[-1, 1, -1, 1]]);
        assert_eq!(inv, want);
        assert!(v.is_p);

        let swap = Matrix::<Q>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let (inv, v) = inverse_p_check(&swap, Method::Both, &caps).unwrap();
        assert_eq!(inv, swap);
        assert!(!v.is_p);

        let singular = OperatorSpec::RightShift.truncate(3).unwrap();
        assert!(matches!(inverse_p_check(&singular, Method::Minors, &caps), Err(ZooError::Linalg(_))));
    }
}
