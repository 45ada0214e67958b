use num_rational::BigRational;

use pcheck::io::parse_matrix;
use pcheck::linalg::{AnyMatrix, IndexSet, Matrix, Vector};
use pcheck::pmatrix::{
    find_sign_reversal_witness, is_p, is_positive_definite, orthant_feasible, principal_minors,
    reverses_sign, Caps, Certificate, Method, SignPattern,
};
use pcheck::scalar::Scalar;
use pcheck::zoo::{
    block_hadamard_unitary, p_test_relative, BasisSpec, OperatorSpec, SequenceGen, PRESETS,
};

type Q = BigRational;

fn q(p: i64, d: i64) -> Q {
    Q::from_ratio(p, d)
}

fn preset(name: &str, n: usize) -> Matrix<Q> {
    OperatorSpec::preset(name).unwrap().truncate(n).unwrap()
}

#[test]
fn determinants() {
    assert_eq!(Matrix::<Q>::identity(4).determinant(), q(1, 1));
    assert_eq!(Matrix::<Q>::from_i64_rows(&[&[0, 1], &[1, 0]]).determinant(), q(-1, 1));
    assert_eq!(preset("example-5-id-plus-right-shift", 5).determinant(), q(1, 1));
}

#[test]
fn inverse_round_trip_is_exact() {
    let a = Matrix::<Q>::from_i64_rows(&[&[2, -1, 0], &[1, 3, 1], &[0, 1, 4]]);
    assert_eq!(a.matmul(&a.inverse().unwrap()).unwrap(), Matrix::identity(3));
}

#[test]
fn linear_solves() {
    let b = Vector::<Q>::from_i64(&[3, -4]);
    assert_eq!(Matrix::<Q>::identity(2).solve(&b).unwrap(), b);
    let d = Matrix::<Q>::from_i64_rows(&[&[2, 0], &[0, 4]]);
    assert_eq!(d.solve(&Vector::<Q>::from_i64(&[2, 8])).unwrap(), Vector::from_i64(&[1, 2]));
    let shift = preset("example-4-right-shift", 3);
    assert!(shift.solve(&Vector::<Q>::from_i64(&[1, 0, 0])).is_err());
}

#[test]
fn bidiagonal_twos_submatrix() {
    let t = preset("example-6", 3);
    let s = IndexSet::new(vec![2, 3], 3).unwrap();
    assert_eq!(t.principal_submatrix(&s).unwrap(), Matrix::from_i64_rows(&[&[1, 0], &[2, 1]]));
}

#[test]
fn minors_examples() {
    let i2: Vec<_> = principal_minors(&Matrix::<Q>::identity(2), &Caps::default())
        .unwrap()
        .into_iter()
        .map(|(s, v)| (s.indices().to_vec(), v))
        .collect();
    assert_eq!(i2, vec![(vec![1], q(1, 1)), (vec![2], q(1, 1)), (vec![1, 2], q(1, 1))]);

    let upper = principal_minors(&preset("example-5-id-plus-left-shift", 4), &Caps::default()).unwrap();
    assert_eq!(upper.len(), 15);
    assert!(upper.iter().all(|(_, v)| *v == q(1, 1)));

    let v = is_p(&preset("example-4-right-shift", 4), Method::Minors).unwrap();
    assert_eq!(
        v.certificate,
        Certificate::NonPositiveMinor { set: IndexSet::new(vec![1], 4).unwrap(), value: q(0, 1) }
    );
    assert!(is_p(&Matrix::<Q>::identity(5), Method::Minors).unwrap().is_p);
    assert!(is_p(&preset("example-17", 2), Method::Minors).unwrap().is_p);
}

#[test]
fn sign_reversal_examples() {
    let tl = preset("example-4-left-shift", 4);
    assert!(reverses_sign(&tl, &SequenceGen::AlternatingHarmonic.prefix(4), 0.0).unwrap());
    let x = find_sign_reversal_witness(&tl, &Caps::default()).unwrap().unwrap();
    assert!(reverses_sign(&tl, &x, 1e-9).unwrap());

    let ipr = preset("example-5-id-plus-right-shift", 3);
    for b in 0..8 {
        assert_eq!(orthant_feasible(&ipr, &SignPattern::from_index(b, 3)).unwrap(), None);
    }
    assert_eq!(find_sign_reversal_witness(&preset("example-8", 4), &Caps::default()).unwrap(), None);
    assert_eq!(find_sign_reversal_witness(&Matrix::<Q>::identity(3), &Caps::default()).unwrap(), None);
}

#[test]
fn positive_definiteness_examples() {
    assert!(is_positive_definite(&Matrix::<Q>::identity(3)));
    assert!(!is_positive_definite(&preset("example-17", 2)));
    assert!(is_positive_definite(&preset("example-11", 3)));
}

#[test]
fn preset_verdicts_standard_basis() {
    let expected = [
        ("example-3-diagonal", true),
        ("example-4-right-shift", false),
        ("example-4-left-shift", false),
        ("example-5-id-plus-right-shift", true),
        ("example-5-id-plus-left-shift", true),
        ("example-6", true),
        ("example-8", true),
        ("example-11", true),
        ("example-17", true),
    ];
    assert_eq!(expected.len(), PRESETS.len());
    for (name, want) in expected {
        for n in [2, 4, 6, 8] {
            let r = p_test_relative(&OperatorSpec::preset(name).unwrap(), &BasisSpec::Standard, n, Method::Both, &Caps::default())
                .unwrap();
            assert_eq!(r.is_p(), want, "{name} at n = {n}");
        }
    }
}

#[test]
fn block_hadamard_basis_examples() {
    let u = BasisSpec::TransformedBy(block_hadamard_unitary(4).unwrap());
    let caps = Caps::default();
    let r6 = p_test_relative(&OperatorSpec::LowerBidiagonalTwos, &u, 4, Method::Both, &caps).unwrap();
    assert!(!r6.is_p());
    let w = r6.witness.unwrap();
    assert!(w.iter().zip([1.0, -1.0, 0.0, 0.0]).all(|(a, b)| (a - b).abs() < 1e-9), "{w:?}");
    let r8 = p_test_relative(&OperatorSpec::BlockRotationMix, &u, 4, Method::Both, &caps).unwrap();
    assert!(r8.is_p());
}

#[test]
fn matrix_file_formats() {
    let m = parse_matrix(r#"{"n": 2, "entries": [["1/2", 0], [0, "3/4"]], "scalar": "rational"}"#).unwrap();
    assert_eq!(m, AnyMatrix::Rational(Matrix::diagonal(&[q(1, 2), q(3, 4)])));
    let f = parse_matrix("1.5, 0\n0, 2\n").unwrap();
    assert_eq!(f, AnyMatrix::Float(Matrix::diagonal(&[1.5, 2.0])));
    assert!(parse_matrix(r#"{"n": 3, "entries": [[1]]}"#).is_err());
}
