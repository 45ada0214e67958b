use itertools::Itertools;
use rayon::prelude::*;

use crate::linalg::{Determinant, IndexSet, Matrix};
use crate::pmatrix::{Caps, Certificate, Method, PError, PVerdict};
use crate::scalar::ScalarKind;

fn check_cap(n: usize, cap: usize) -> Result<(), PError> {
    if n > cap {
        return Err(PError::CapExceeded { what: "principal minors", n, cap });
    }
    Ok(())
}

/// All `2^n - 1` principal minors, ordered by subset size and then lexicographically.
pub fn principal_minors<T: Determinant>(
    a: &Matrix<T>,
    caps: &Caps,
) -> Result<Vec<(IndexSet, T)>, PError> {
    check_cap(a.n(), caps.minors)?;
    let src = T::minor_source(a);
    let n = a.n();
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n {
        let sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let values: Vec<T> = sets.par_iter().map(|s| src.minor(s)).collect();
        out.extend(
            sets.iter()
                .zip(values)
                .map(|(s, v)| (IndexSet::from_zero_based(s), v)),
        );
    }
    Ok(out)
}

/// P-test by exhaustive principal minors.
///
/// Strict: a minor equal to zero (or, in float mode, within tolerance of zero)
/// disqualifies. The reported certificate is the first violating subset in
/// size-then-lexicographic order regardless of parallel scheduling.
pub fn is_p_by_minors<T: Determinant>(a: &Matrix<T>, caps: &Caps) -> Result<PVerdict<T>, PError> {
    check_cap(a.n(), caps.minors)?;
    let src = T::minor_source(a);
    let n = a.n();
    for k in 1..=n {
        let sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        let hit = sets.par_iter().find_map_first(|s| {
            let v = src.minor(s);
            let scale = src.scale(s);
            v.is_nonpositive_at(scale).then(|| (s, v, scale))
        });
        if let Some((s, value, scale)) = hit {
            let set = IndexSet::from_zero_based(s);
            let mut diagnostics = Vec::new();
            if T::KIND == ScalarKind::Float && value.negligible(scale) {
                diagnostics.push(format!(
                    "boundary: minor over {set} = {value:e} is within tolerance of zero (scale {scale:e})",
                    value = value.as_f64()
                ));
            }
            return Ok(PVerdict {
                is_p: false,
                method: Method::Minors,
                certificate: Certificate::NonPositiveMinor { set, value },
                corroboration: None,
                diagnostics,
            });
        }
    }
    Ok(PVerdict {
        is_p: true,
        method: Method::Minors,
        certificate: Certificate::AllMinorsPositive { count: (1u64 << n) - 1 },
        corroboration: None,
        diagnostics: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    #[test]
    fn identity_two() {
        let m = principal_minors(&Matrix::<BigRational>::identity(2), &Caps::default()).unwrap();
        let got: Vec<(String, BigRational)> = m.into_iter().map(|(s, v)| (s.to_string(), v)).collect();
        assert_eq!(
            got,
            vec![
                ("{1}".into(), BigRational::one()),
                ("{2}".into(), BigRational::one()),
                ("{1,2}".into(), BigRational::one()),
            ]
        );
    }

    #[test]
    fn swap_minors() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let vals: Vec<i64> = principal_minors(&a, &Caps::default())
            .unwrap()
            .into_iter()
            .map(|(_, v)| v.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(vals, vec![0, 0, -1]);
    }

    #[test]
    fn upper_bidiagonal_all_minors_one() {
        let a = Matrix::<BigRational>::from_fn(4, |i, j| {
            if i == j || j == i + 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let m = principal_minors(&a, &Caps::default()).unwrap();
        assert_eq!(m.len(), 15);
        assert!(m.iter().all(|(_, v)| v.is_one()));
    }

    #[test]
    fn shift_fails_at_first_diagonal() {
        let a = Matrix::<BigRational>::from_fn(4, |i, j| {
            if i == j + 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let v = is_p_by_minors(&a, &Caps::default()).unwrap();
        assert!(!v.is_p);
        assert_eq!(
            v.certificate,
            Certificate::NonPositiveMinor {
                set: IndexSet::new(vec![1], 4).unwrap(),
                value: BigRational::zero()
            }
        );
        assert!(v.certificates_sound(&a));
    }

    #[test]
    fn coupled_first_entry_is_p() {
        let a = Matrix::<BigRational>::from_i64_rows(&[&[1, -7], &[0, 1]]);
        let v = is_p_by_minors(&a, &Caps::default()).unwrap();
        assert!(v.is_p);
        assert_eq!(v.certificate, Certificate::AllMinorsPositive { count: 3 });
    }

    #[test]
    fn cap_enforced() {
        let caps = Caps { minors: 3, ..Caps::default() };
        let a = Matrix::<f64>::identity(4);
        assert!(matches!(
            is_p_by_minors(&a, &caps),
            Err(PError::CapExceeded { n: 4, cap: 3, .. })
        ));
        assert!(principal_minors(&a, &caps).is_err());
    }

    #[test]
    fn float_boundary_is_flagged() {
        let a = Matrix::<f64>::from_rows(vec![vec![1e-12, 0.0], vec![0.0, 1.0]]).unwrap();
        let v = is_p_by_minors(&a, &Caps::default()).unwrap();
        assert!(!v.is_p);
        assert_eq!(v.diagnostics.len(), 1);
        assert!(v.diagnostics[0].starts_with("boundary"));
    }
}
