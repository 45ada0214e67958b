use num_rational::BigRational;
use proptest::prelude::*;

use pcheck::lcp::{lcp_solve_all, LcpInstance};
use pcheck::linalg::{IndexSet, Matrix, Vector};
use pcheck::pmatrix::{
    find_sign_reversal_witness, is_p, is_p_by_minors, principal_minors, reverses_sign, Caps, Method,
};
use pcheck::scalar::Scalar;
use pcheck::zoo::{verify_witness_prefix, OperatorSpec, SequenceGen};

type Q = BigRational;

fn int_matrix(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix<Q>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * n).prop_map(move |v| Matrix::from_fn(n, |i, j| Q::from_i64(v[i * n + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_principal_submatrix_is_identity_map(a in int_matrix(6, -9, 9)) {
        prop_assert_eq!(a.principal_submatrix(&IndexSet::full(a.n())).unwrap(), a);
    }

    #[test]
    fn minors_and_sign_reversal_agree(a in int_matrix(8, -3, 3)) {
        let caps = Caps::default();
        let by_minors = is_p_by_minors(&a, &caps).unwrap();
        let witness = find_sign_reversal_witness(&a, &caps).unwrap();
        prop_assert_eq!(by_minors.is_p, witness.is_none());
        prop_assert!(by_minors.certificates_sound(&a));
        if let Some(x) = witness {
            prop_assert!(x.iter().any(|v| !v.negligible(1.0)));
            prop_assert!(reverses_sign(&a, &x, 1e-9).unwrap());
        }
    }

    #[test]
    fn minor_count_and_first_failure(a in int_matrix(5, -2, 2)) {
        let minors = principal_minors(&a, &Caps::default()).unwrap();
        prop_assert_eq!(minors.len(), (1 << a.n()) - 1);
        let v = is_p_by_minors(&a, &Caps::default()).unwrap();
        let first_bad = minors.iter().find(|(_, m)| !m.is_positive_at(1.0));
        match (first_bad, &v.certificate) {
            (None, _) => prop_assert!(v.is_p),
            (Some((s, m)), pcheck::pmatrix::Certificate::NonPositiveMinor { set, value }) => {
                prop_assert_eq!(s, set);
                prop_assert_eq!(m, value);
            }
            (Some(_), other) => prop_assert!(false, "unexpected certificate {:?}", other),
        }
    }

    #[test]
    fn positive_scaling_preserves_verdict(a in int_matrix(5, -3, 3), c in 1i64..20, d in 1i64..20) {
        let scaled = a.scale(&Q::from_ratio(c, d));
        prop_assert_eq!(
            is_p(&a, Method::Minors).unwrap().is_p,
            is_p(&scaled, Method::Minors).unwrap().is_p
        );
    }

    #[test]
    fn float_and_exact_verdicts_agree(a in int_matrix(6, -3, 3)) {
        let exact = is_p(&a, Method::Both).unwrap().is_p;
        let float = is_p(&a.to_float(), Method::Minors).unwrap().is_p;
        prop_assert_eq!(exact, float);
    }

    #[test]
    fn lcp_solutions_satisfy_conditions(
        a in int_matrix(5, -3, 3),
        q in prop::collection::vec(-1.0f64..1.0, 5),
    ) {
        let n = a.n();
        let af = a.to_float();
        let inst = LcpInstance::new(af, Vector::new(q[..n].to_vec())).unwrap();
        let set = lcp_solve_all(&inst, &Caps::default()).unwrap();
        for s in &set.solutions {
            prop_assert!(inst.is_solution(&s.z, 1e-8));
        }
        // merged solutions are pairwise farther apart than the merge tolerance
        for (i, x) in set.solutions.iter().enumerate() {
            for y in &set.solutions[i + 1..] {
                prop_assert!(x.z.distance_max(&y.z) > 1e-8);
            }
        }
    }

    #[test]
    fn p_matrices_have_unique_lcp_solutions(
        a in int_matrix(5, -3, 3),
        q in prop::collection::vec(-1i64..=1, 5),
    ) {
        let n = a.n();
        prop_assume!(is_p(&a, Method::Minors).unwrap().is_p);
        let inst = LcpInstance::new(a, Vector::from_i64(&q[..n])).unwrap();
        prop_assert_eq!(lcp_solve_all(&inst, &Caps::default()).unwrap().len(), 1);
    }

    #[test]
    fn witness_prefix_is_monotone(k in 1usize..200, m in 1usize..200) {
        let (lo, hi) = if k <= m { (k, m) } else { (m, k) };
        let w = SequenceGen::AlternatingHarmonic;
        for spec in [OperatorSpec::RightShift, OperatorSpec::LeftShift, OperatorSpec::IdPlusRightShift, OperatorSpec::BlockRotationMix] {
            if verify_witness_prefix(&spec, &w, hi) {
                prop_assert!(verify_witness_prefix(&spec, &w, lo));
            }
        }
    }
}
