//! Sign non-reversal: orthant-wise LP search for a vector whose sign `A` reverses.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::LinalgError;
use crate::linalg::{Determinant, Matrix, Vector};
use crate::pmatrix::simplex::{phase_one, solve, FeasibilityProblem, LinearProgram, LpOutcome};
use crate::pmatrix::{Caps, Certificate, Method, PError, PVerdict};
use crate::scalar::{Scalar, TOL};

/// Orthant selector, entries in `{+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self, PError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(PError::BadSignPattern(signs));
        }
        Ok(SignPattern(signs))
    }

    /// Pattern number `index` in binary order: bit `i` set means coordinate
    /// `i + 1` is negative.
    pub fn from_index(index: u64, n: usize) -> Self {
        SignPattern((0..n).map(|i| if index >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn apply<T: Scalar>(&self, i: usize, v: T) -> T {
        if self.0[i] < 0 {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// True iff `x_i (Ax)_i <= tol` for every `i`.
pub fn reverses_sign<T: Scalar>(a: &Matrix<T>, x: &[T], tol: f64) -> Result<bool, LinalgError> {
    let ax = a.mul_vec(x)?;
    Ok(x.iter().zip(ax.iter()).all(|(xi, yi)| {
        let p = xi.clone() * yi.clone();
        !p.is_positive() || (tol > 0.0 && p.as_f64() <= tol)
    }))
}

/// Rows of `S A S`.
fn orthant_rows<T: Scalar>(a: &Matrix<T>, s: &SignPattern) -> Result<Vec<Vec<T>>, PError> {
    let n = a.n();
    if s.len() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: s.len() }.into());
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| s.apply(i, s.apply(j, a[(i, j)].clone()))).collect())
        .collect())
}

fn orthant_nonempty<T: Scalar>(a: &Matrix<T>, s: &SignPattern) -> Result<bool, PError> {
    let n = a.n();
    let problem = FeasibilityProblem {
        num_vars: n,
        upper: orthant_rows(a, s)?.into_iter().map(|r| (r, T::zero())).collect(),
        equal: vec![(vec![T::one(); n], T::one())],
        objective: None,
    };
    Ok(phase_one(&problem)?.is_feasible())
}

fn optimum<T: Scalar>(lp: &LinearProgram<T>) -> Result<Vec<T>, PError> {
    match solve(lp)? {
        LpOutcome::Optimal { x, .. } => Ok(x),
        other => Err(PError::Numerical(format!("witness LP ended as {other:?}"))),
    }
}

/// Looks for `x` with `s_i x_i >= 0`, `s_i (Ax)_i <= 0` and `sum s_i x_i = 1`.
///
/// With `y = S x` the constraints become `M y <= 0`, `y >= 0`, `sum y = 1`
/// for `M = S A S`. When feasible, the point returned is fixed as follows:
/// maximize the total slack `-1^T M y`; on that optimal face find the largest
/// achievable support `J`; then maximize `min_{i in J} y_i`. For the swap
/// matrix this gives `(1/2, -1/2)` rather than a vertex like `(1, 0)`.
pub fn orthant_feasible<T: Scalar>(
    a: &Matrix<T>,
    s: &SignPattern,
) -> Result<Option<Vector<T>>, PError> {
    if !orthant_nonempty(a, s)? {
        return Ok(None);
    }
    let n = a.n();
    let b = orthant_rows(a, s)?;
    let unit = |k: usize, width: usize, v: T| {
        let mut r = vec![T::zero(); width];
        r[k] = v;
        r
    };

    // slack: minimize 1^T M y over the feasible polytope
    let colsum: Vec<T> = (0..n).map(|j| b.iter().fold(T::zero(), |acc, r| acc + r[j].clone())).collect();
    let best = optimum(&LinearProgram {
        num_vars: n,
        upper: b.iter().map(|r| (r.clone(), T::zero())).collect(),
        equal: vec![(vec![T::one(); n], T::one())],
        objective: Some(colsum.clone()),
    })?;
    let v = best.iter().zip(&colsum).fold(T::zero(), |acc, (y, c)| acc + y.clone() * c.clone());
    // optimal face, homogeneous form: (colsum - v 1)^T y = 0
    let face: Vec<T> = colsum.iter().map(|c| c.clone() - v.clone()).collect();
    let padded = |width: usize| {
        let mut row = face.clone();
        row.resize(width, T::zero());
        (row, T::zero())
    };

    // support: vars (y, z), z_i <= y_i, z_i <= 1, maximize sum z over the optimal face's cone
    let width = 2 * n;
    let mut upper: Vec<(Vec<T>, T)> = b
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(width, T::zero());
            (row, T::zero())
        })
        .collect();
    for i in 0..n {
        let mut row = unit(n + i, width, T::one());
        row[i] = -T::one();
        upper.push((row, T::zero()));
        upper.push((unit(n + i, width, T::one()), T::one()));
    }
    let mut c = vec![T::zero(); width];
    c[n..].iter_mut().for_each(|v| *v = -T::one());
    let z = optimum(&LinearProgram { num_vars: width, upper, equal: vec![padded(width)], objective: Some(c) })?;
    let support: Vec<bool> = (0..n).map(|i| z[n + i].is_positive_at(1.0)).collect();

    // centering: vars (y, t), t <= y_i on J, y_i <= 0 off J, sum y = 1, maximize t
    let width = n + 1;
    let mut upper: Vec<(Vec<T>, T)> = b
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.push(T::zero());
            (row, T::zero())
        })
        .collect();
    for (i, &inside) in support.iter().enumerate() {
        if inside {
            let mut row = unit(n, width, T::one());
            row[i] = -T::one();
            upper.push((row, T::zero()));
        } else {
            upper.push((unit(i, width, T::one()), T::zero()));
        }
    }
    let mut sum = vec![T::one(); width];
    sum[n] = T::zero();
    let y = optimum(&LinearProgram {
        num_vars: width,
        upper,
        equal: vec![(sum, T::one()), padded(width)],
        objective: Some(unit(n, width, -T::one())),
    })?;
    Ok(Some(y.into_iter().take(n).enumerate().map(|(i, v)| s.apply(i, v)).collect()))
}

/// Scales to unit max-norm and makes the first clearly nonzero entry positive.
fn canonical<T: Scalar>(x: Vector<T>) -> Vector<T> {
    let max = x
        .iter()
        .map(|v| v.abs())
        .fold(T::zero(), |m, v| if v > m { v } else { m });
    if max.is_zero() {
        return x;
    }
    let mut y: Vec<T> = x.iter().map(|v| v.clone() / max.clone()).collect();
    if y.iter().find(|v| !v.negligible(1.0)).is_some_and(|v| v.is_negative()) {
        y.iter_mut().for_each(|v| *v = -v.clone());
    }
    Vector::new(y)
}

/// Exhaustive orthant search for a sign-reversal witness.
///
/// `s` and `-s` give the same LP up to `x -> -x`, so only patterns with the last
/// coordinate positive are solved; in binary order the first feasible pattern
/// always lies in that half. The witness is rescaled to unit max-norm.
pub fn find_sign_reversal_witness<T: Scalar>(
    a: &Matrix<T>,
    caps: &Caps,
) -> Result<Option<Vector<T>>, PError> {
    let n = a.n();
    if n > caps.sign_reversal {
        return Err(PError::CapExceeded { what: "sign-reversal orthants", n, cap: caps.sign_reversal });
    }
    if n == 0 {
        return Ok(None);
    }
    let half = 1u64 << (n - 1);
    let found = (0..half).into_par_iter().find_map_first(|b| {
        let s = SignPattern::from_index(b, n);
        match orthant_nonempty(a, &s) {
            Ok(false) => None,
            Ok(true) => Some(Ok(s)),
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        None => Ok(None),
        Some(Err(e)) => Err(e),
        Some(Ok(s)) => {
            let x = orthant_feasible(a, &s)?
                .ok_or_else(|| PError::Numerical(format!("orthant {s} lost feasibility")))?;
            let x = canonical(x);
            if !reverses_sign(a, &x, TOL)? {
                return Err(PError::Numerical(format!(
                    "orthant LP returned a point that fails the sign-reversal check: {:?}",
                    x.to_float().as_slice()
                )));
            }
            Ok(Some(x))
        }
    }
}

pub fn is_p_by_sign_reversal<T: Determinant>(
    a: &Matrix<T>,
    caps: &Caps,
) -> Result<PVerdict<T>, PError> {
    let n = a.n();
    let verdict = match find_sign_reversal_witness(a, caps)? {
        Some(x) => PVerdict {
            is_p: false,
            method: Method::SignReversal,
            certificate: Certificate::SignReversalWitness(x),
            corroboration: None,
            diagnostics: Vec::new(),
        },
        None => PVerdict {
            is_p: true,
            method: Method::SignReversal,
            certificate: Certificate::NoSignReversal { orthants: 1u64 << n },
            corroboration: None,
            diagnostics: Vec::new(),
        },
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::from_ratio(p, d)
    }

    #[test]
    fn left_shift_reverses_alternating_harmonic() {
        let tl = Matrix::<BigRational>::from_fn(4, |i, j| {
            if j == i + 1 {
                q(1, 1)
            } else {
                q(0, 1)
            }
        });
        let x = [q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)];
        assert!(reverses_sign(&tl, &x, 0.0).unwrap());
    }

    #[test]
    fn identity_reverses_nothing() {
        let i3 = Matrix::<f64>::identity(3);
        assert!(!reverses_sign(&i3, &[0.0, -2.0, 0.0], TOL).unwrap());
        assert!(!reverses_sign(&i3, &[1.0, 1.0, 1.0], TOL).unwrap());
    }

    #[test]
    fn swap_reverses_one_minus_one() {
        let a = Matrix::<f64>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(reverses_sign(&a, &[1.0, -1.0], 0.0).unwrap());
    }

    #[test]
    fn identity_orthants_infeasible() {
        let a = Matrix::<BigRational>::identity(3);
        for b in 0..8 {
            assert_eq!(orthant_feasible(&a, &SignPattern::from_index(b, 3)).unwrap(), None);
        }
    }

    #[test]
    fn swap_orthant_plus_minus() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let s = SignPattern::new(vec![1, -1]).unwrap();
        let x = orthant_feasible(&a, &s).unwrap().unwrap();
        // x proportional to (1, -1) with s.x = 1
        assert_eq!(x.as_slice(), &[q(1, 2), q(-1, 2)]);
    }

    #[test]
    fn unit_lower_bidiagonal_no_feasible_orthant() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
        for b in 0..8 {
            assert_eq!(orthant_feasible(&a, &SignPattern::from_index(b, 3)).unwrap(), None);
        }
    }

    #[test]
    fn witness_canonical_form() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let x = find_sign_reversal_witness(&a, &Caps::default()).unwrap().unwrap();
        assert_eq!(x.as_slice(), &[q(1, 1), q(-1, 1)]);
        assert_eq!(find_sign_reversal_witness(&Matrix::<BigRational>::identity(3), &Caps::default()).unwrap(), None);
    }

    #[test]
    fn bad_pattern_rejected() {
        assert!(SignPattern::new(vec![1, 0]).is_err());
        assert_eq!(SignPattern::from_index(5, 3).to_string(), "-+-");
    }
}
