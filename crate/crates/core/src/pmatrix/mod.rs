//! Deciding the P-property of a finite matrix.
//!
//! Two independent routes are provided: exhaustive principal minors, and a
//! search for a nonzero vector whose sign the matrix reverses (one phase-I LP
//! per orthant). A matrix is P exactly when the first route finds every minor
//! positive and, equivalently, when the second finds no witness; running both
//! and comparing is the main consistency check of this crate.

mod minors;
mod sign;
pub mod simplex;
mod verdict;

pub use minors::{is_p_by_minors, principal_minors};
pub use sign::{
    find_sign_reversal_witness, is_p_by_sign_reversal, orthant_feasible, reverses_sign,
    SignPattern,
};
pub use verdict::{Certificate, Method, PVerdict};

use num_rational::BigRational;
use thiserror::Error;

use crate::error::LinalgError;
use crate::linalg::{AnyMatrix, Determinant, Matrix};
use crate::scalar::Scalar;

/// Dimension caps for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub minors: usize,
    pub sign_reversal: usize,
    pub lcp: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { minors: 20, sign_reversal: 16, lcp: 14 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PError {
    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("methods disagree: minors say is_p = {minors}, sign reversal says is_p = {sign_reversal} (numerical boundary case)")]
    MethodDisagreement { minors: bool, sign_reversal: bool },
    #[error("sign pattern entries must be +1 or -1, got {0:?}")]
    BadSignPattern(Vec<i8>),
    #[error(transparent)]
    Simplex(#[from] simplex::SimplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Decides the P-property with the requested method(s).
///
/// With [`Method::Both`] the minors verdict supplies the certificate and the
/// sign-reversal verdict the corroboration; disagreement is an error.
pub fn is_p<T: Determinant>(a: &Matrix<T>, method: Method) -> Result<PVerdict<T>, PError> {
    is_p_with_caps(a, method, &Caps::default())
}

pub fn is_p_with_caps<T: Determinant>(
    a: &Matrix<T>,
    method: Method,
    caps: &Caps,
) -> Result<PVerdict<T>, PError> {
    match method {
        Method::Minors => is_p_by_minors(a, caps),
        Method::SignReversal => is_p_by_sign_reversal(a, caps),
        Method::Both => {
            // check both caps before spending time on either route
            if a.n() > caps.sign_reversal {
                return Err(PError::CapExceeded {
                    what: "sign-reversal orthants",
                    n: a.n(),
                    cap: caps.sign_reversal,
                });
            }
            let by_minors = is_p_by_minors(a, caps)?;
            let by_sign = is_p_by_sign_reversal(a, caps)?;
            if by_minors.is_p != by_sign.is_p {
                return Err(PError::MethodDisagreement {
                    minors: by_minors.is_p,
                    sign_reversal: by_sign.is_p,
                });
            }
            let mut diagnostics = by_minors.diagnostics;
            diagnostics.extend(by_sign.diagnostics);
            Ok(PVerdict {
                is_p: by_minors.is_p,
                method: Method::Both,
                certificate: by_minors.certificate,
                corroboration: Some(by_sign.certificate),
                diagnostics,
            })
        }
    }
}

/// `<Ax, x> > 0` for all nonzero `x`: Sylvester's criterion on `(A + A^T)/2`.
pub fn is_positive_definite<T: Determinant>(a: &Matrix<T>) -> bool {
    let s = a.symmetric_part();
    let src = T::minor_source(&s);
    (1..=s.n()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        src.minor(&idx).is_positive_at(src.scale(&idx))
    })
}

/// Verdict over either scalar kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyVerdict {
    Float(PVerdict<f64>),
    Rational(PVerdict<BigRational>),
}

impl AnyVerdict {
    pub fn is_p(&self) -> bool {
        match self {
            AnyVerdict::Float(v) => v.is_p,
            AnyVerdict::Rational(v) => v.is_p,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnyVerdict::Float(v) => v.to_json(),
            AnyVerdict::Rational(v) => v.to_json(),
        }
    }

    pub fn diagnostics(&self) -> &[String] {
        match self {
            AnyVerdict::Float(v) => &v.diagnostics,
            AnyVerdict::Rational(v) => &v.diagnostics,
        }
    }

    /// Witness in `f64`, if either certificate slot holds one.
    pub fn witness_f64(&self) -> Option<Vec<f64>> {
        match self {
            AnyVerdict::Float(v) => v.witness().map(|x| x.to_vec()),
            AnyVerdict::Rational(v) => v.witness().map(|x| x.iter().map(Scalar::as_f64).collect()),
        }
    }
}

pub fn is_p_any(a: &AnyMatrix, method: Method, caps: &Caps) -> Result<AnyVerdict, PError> {
    Ok(match a {
        AnyMatrix::Float(m) => AnyVerdict::Float(is_p_with_caps(m, method, caps)?),
        AnyMatrix::Rational(m) => AnyVerdict::Rational(is_p_with_caps(m, method, caps)?),
    })
}

pub fn is_positive_definite_any(a: &AnyMatrix) -> bool {
    match a {
        AnyMatrix::Float(m) => is_positive_definite(m),
        AnyMatrix::Rational(m) => is_positive_definite(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_both_agree() {
        let v = is_p(&Matrix::<BigRational>::identity(4), Method::Both).unwrap();
        assert!(v.is_p);
        assert_eq!(v.certificate, Certificate::AllMinorsPositive { count: 15 });
        assert_eq!(v.corroboration, Some(Certificate::NoSignReversal { orthants: 16 }));
    }

    #[test]
    fn swap_both_certificates() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let v = is_p(&a, Method::Both).unwrap();
        assert!(!v.is_p);
        assert!(matches!(v.certificate, Certificate::NonPositiveMinor { .. }));
        assert!(v.witness().is_some());
        assert!(v.certificates_sound(&a));
        let json = v.to_json();
        assert_eq!(json["certificate"]["kind"], "minor");
        assert_eq!(json["corroboration"]["kind"], "witness");
        assert_eq!(json["corroboration"]["x"], serde_json::json!(["1", "-1"]));
    }

    #[test]
    fn positive_definite_examples() {
        assert!(is_positive_definite(&Matrix::<BigRational>::identity(3)));
        let coupled = Matrix::<BigRational>::from_i64_rows(&[&[1, -7], &[0, 1]]);
        assert!(!is_positive_definite(&coupled));
        assert!(is_p(&coupled, Method::Both).unwrap().is_p);
        let harmonic = Matrix::from_ratio_rows(&[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 2), (0, 1)], &[(0, 1), (0, 1), (1, 3)]]);
        assert!(is_positive_definite(&harmonic));
    }

    #[test]
    fn both_respects_sign_cap() {
        let caps = Caps { sign_reversal: 2, ..Caps::default() };
        assert!(matches!(
            is_p_with_caps(&Matrix::<f64>::identity(3), Method::Both, &caps),
            Err(PError::CapExceeded { .. })
        ));
    }
}
