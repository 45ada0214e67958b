//! Property suites that check the finite-dimensional statements end to end.
//!
//! Every suite draws from its own ChaCha8 stream derived from the run seed,
//! generates its cases sequentially and evaluates them in parallel, so the
//! report is a pure function of `(max_n, seed)`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::lcp::{lcp_solve_all, lcp_unique_for_samples, LcpInstance};
use crate::linalg::{random_orthogonal, AnyMatrix, Determinant, IndexSet, Matrix, Vector};
use crate::pmatrix::{
    find_sign_reversal_witness, is_p_by_minors, is_p_by_sign_reversal, is_p_with_caps,
    is_positive_definite, reverses_sign, Caps, Method, PVerdict,
};
use crate::scalar::{Scalar, TOL};
use crate::zoo::{
    block_hadamard_unitary, commutes, conjugate, first_prefix_violation, p_test_relative,
    p_test_relative_matrix, BasisSpec, OperatorSpec, SequenceGen, Side,
};

type Q = BigRational;

/// Largest size at which the exhaustive routes run; above it the example
/// suite uses structural certificates plus sampled exact minors.
pub const ENUMERATION_LIMIT: usize = 16;
/// Largest size at which both routes run and must agree.
pub const BOTH_LIMIT: usize = 10;
/// Same, for the dense `B^T B + I/10` cases, whose exact LPs grow large denominators.
const PD_BOTH_LIMIT: usize = 6;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Inverts every P verdict the suites compute; the run must then fail.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 32, seed: 42, inject_fault: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// At most `MAX_FAILURES` messages, in case order.
    pub failures: Vec<String>,
    pub details: serde_json::Value,
}

const MAX_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    fn absorb(&mut self, results: Vec<Result<(), String>>) {
        for r in results {
            self.check(r.is_ok(), || r.unwrap_err());
        }
    }

    fn finish(self, criterion: u8, name: &'static str, details: serde_json::Value) -> SuiteResult {
        let mut details = details;
        details["failed_cases"] = json!(self.failed);
        SuiteResult { criterion, name, passed: self.failed == 0, cases: self.cases, failures: self.failures, details }
    }
}

fn suite_rng(seed: u64, criterion: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(criterion) << 56))
}

/// Entries uniform in `lo..=hi`.
pub fn random_int_matrix<R: Rng + ?Sized>(n: usize, lo: i64, hi: i64, rng: &mut R) -> Matrix<Q> {
    Matrix::from_fn(n, |_, _| Q::from_i64(rng.random_range(lo..=hi)))
}

/// Rejection sampling: off-diagonal entries in `[-3, 3]`, diagonal in `[1, 6]`,
/// kept once every principal minor is positive.
pub fn random_p_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<Q> {
    let caps = Caps::default();
    loop {
        let mut a = random_int_matrix(n, -3, 3, rng);
        for i in 0..n {
            a[(i, i)] = Q::from_i64(rng.random_range(1..=6));
        }
        if is_p_by_minors(&a, &caps).map(|v| v.is_p).unwrap_or(false) {
            return a;
        }
    }
}

struct Checker {
    caps: Caps,
    fault: bool,
}

impl Checker {
    fn verdict<T: Determinant>(&self, a: &Matrix<T>, method: Method) -> Result<PVerdict<T>, String> {
        let mut v = is_p_with_caps(a, method, &self.caps).map_err(|e| e.to_string())?;
        if self.fault {
            v.is_p = !v.is_p;
        }
        Ok(v)
    }

    fn is_p<T: Determinant>(&self, a: &Matrix<T>, method: Method) -> Result<bool, String> {
        self.verdict(a, method).map(|v| v.is_p)
    }

    fn flip(&self, b: bool) -> bool {
        b != self.fault
    }
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let ck = Checker { caps: Caps::default(), fault: config.inject_fault };
    let mut suites = vec![
        oracle_equivalence(config, &ck),
        lcp_uniqueness(config, &ck),
        example_suite(config, &ck),
        conjugation(config, &ck),
        commuting_unitary(config, &ck),
        inverse_closure(config, &ck),
        positive_definite(config, &ck),
    ];
    suites.push(determinism(config, &suites));
    let passed = suites.iter().all(|s| s.passed);
    VerifyReport { max_n: config.max_n, seed: config.seed, passed, suites }
}

/// Sizes `lo..=hi` capped by `max_n`, cycled to fill `count` cases.
fn sizes(count: usize, lo: usize, hi: usize, max_n: usize) -> Vec<usize> {
    let hi = hi.min(max_n).max(lo);
    (0..count).map(|k| lo + k % (hi - lo + 1)).collect()
}

fn oracle_equivalence(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 1);
    let cases: Vec<Matrix<Q>> = sizes(1000, 2, 7, config.max_n)
        .into_iter()
        .map(|n| random_int_matrix(n, -3, 3, &mut rng))
        .collect();
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, a)| {
            let by_minors = ck.verdict(a, Method::Minors)?;
            let by_sign = is_p_by_sign_reversal(a, &ck.caps).map_err(|e| e.to_string())?;
            if by_minors.is_p != by_sign.is_p {
                return Err(format!("case {k}: minors say {}, sign reversal says {}", by_minors.is_p, by_sign.is_p));
            }
            if !by_minors.certificates_sound(a) || !by_sign.certificates_sound(a) {
                return Err(format!("case {k}: unsound certificate"));
            }
            Ok(by_minors.is_p)
        })
        .collect();
    let p_count = results.iter().filter(|r| matches!(r, Ok(true))).count();
    let mut t = Tally::new();
    t.absorb(results.into_iter().map(|r| r.map(|_| ())).collect());
    t.finish(1, "oracle-equivalence", json!({"matrices": cases.len(), "p_matrices": p_count, "entries": [-3, 3]}))
}

fn lcp_uniqueness(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 2);
    let mats: Vec<Matrix<Q>> = sizes(50, 2, 6, config.max_n).into_iter().map(|n| random_p_matrix(n, &mut rng)).collect();
    let seeds: Vec<u64> = (0..mats.len()).map(|_| rng.random()).collect();
    let results: Vec<Result<(), String>> = mats
        .par_iter()
        .zip(&seeds)
        .enumerate()
        .map(|(k, (a, &s))| {
            if !ck.is_p(a, Method::Minors)? {
                return Err(format!("case {k}: generated matrix is not P"));
            }
            let r = lcp_unique_for_samples(a, 100, s, &ck.caps).map_err(|e| e.to_string())?;
            match r.violating_q {
                None => Ok(()),
                Some(q) => Err(format!("case {k} (n = {}): q = {q:?} has {:?} solutions", a.n(), r.counts)),
            }
        })
        .collect();
    let mut t = Tally::new();
    t.absorb(results);

    let fixture = LcpInstance::new(Matrix::<Q>::from_i64_rows(&[&[-1, 0], &[0, 1]]), Vector::from_i64(&[1, -1]))
        .expect("fixture dimensions");
    let count = lcp_solve_all(&fixture, &ck.caps).map(|s| s.len()).unwrap_or(0);
    let not_p = !ck.is_p(fixture.a(), Method::Both).unwrap_or(true);
    t.check(count == 2 && not_p, || format!("[[-1,0],[0,1]], q = (1,-1): {count} solutions, not P = {not_p}"));
    t.finish(2, "lcp-uniqueness", json!({"p_matrices": mats.len(), "samples_each": 100, "fixture_solutions": count}))
}

/// Exact minor over `set` (1-based).
fn minor(a: &Matrix<Q>, set: &[usize]) -> Q {
    let s = IndexSet::new(set.to_vec(), a.n()).expect("valid subset");
    a.principal_submatrix(&s).expect("in range").determinant()
}

/// Triangular with positive diagonal: every principal submatrix is triangular,
/// so every principal minor is a product of positive diagonal entries. The
/// claim is cross-checked on `samples` random subsets by exact elimination.
fn triangular_p_certificate(a: &Matrix<Q>, samples: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = a.n();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| a[(i, j)].is_zero()));
    let upper = (0..n).all(|i| (0..i).all(|j| a[(i, j)].is_zero()));
    if !lower && !upper {
        return Err("not triangular".into());
    }
    if let Some(i) = (0..n).find(|&i| !a[(i, i)].is_positive()) {
        return Err(format!("diagonal entry {} is not positive", i + 1));
    }
    for _ in 0..samples {
        let k = rng.random_range(1..=n);
        let mut set: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
        set.sort_unstable();
        let want = set.iter().fold(Q::one(), |acc, &i| acc * a[(i - 1, i - 1)].clone());
        if minor(a, &set) != want {
            return Err(format!("sampled minor over {set:?} disagrees with the diagonal product"));
        }
    }
    Ok(())
}

fn example_suite(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let seed = config.seed;
    let max_n = config.max_n.max(1);
    let enum_n = max_n.min(ENUMERATION_LIMIT);
    let mut t = Tally::new();

    let method = |n: usize| if n <= BOTH_LIMIT { Method::Both } else { Method::Minors };
    let expect_p = |name: &str, expected: bool, t: &mut Tally| {
        let spec = OperatorSpec::preset(name).expect("known preset");
        let results: Vec<Result<(), String>> = (1..=max_n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| {
                let a = spec.truncate(n).map_err(|e| e.to_string())?;
                if n <= enum_n {
                    let got = ck.is_p(&a, method(n)).map_err(|e| format!("{name} n = {n}: {e}"))?;
                    if got != expected {
                        return Err(format!("{name} n = {n}: is_p = {got}, expected {expected}"));
                    }
                } else if expected {
                    let mut r = suite_rng(seed ^ n as u64, 3);
                    triangular_p_certificate(&a, 32, &mut r).map_err(|e| format!("{name} n = {n}: {e}"))?;
                    if ck.fault {
                        return Err(format!("{name} n = {n}: fault injected"));
                    }
                } else {
                    let m = minor(&a, &[1]);
                    if ck.flip(m.is_positive()) {
                        return Err(format!("{name} n = {n}: minor {{1}} = {m} is positive"));
                    }
                }
                Ok(())
            })
            .collect();
        t.absorb(results);
    };

    for name in ["example-3-diagonal", "example-5-id-plus-right-shift", "example-5-id-plus-left-shift", "example-6", "example-11", "example-17"] {
        expect_p(name, true, &mut t);
    }
    for name in ["example-4-right-shift", "example-4-left-shift"] {
        expect_p(name, false, &mut t);
    }

    // bounded, positive diagonal sequence
    let seq = SequenceGen::OnePlusHarmonic;
    let (sup, inf) = (seq.sup_abs(), seq.inf());
    t.check(sup.is_some() && inf.is_positive(), || "example-3 sequence bounds".into());

    // shift witnesses: closed-form prefix and finite sections
    let w = SequenceGen::AlternatingHarmonic;
    for spec in [OperatorSpec::RightShift, OperatorSpec::LeftShift] {
        let bad = first_prefix_violation(&spec, &w, 1000);
        t.check(bad.is_none(), || format!("{} witness prefix fails at k = {bad:?}", spec.kind_name()));
    }
    let bad = first_prefix_violation(&OperatorSpec::IdPlusRightShift, &w, 10);
    t.check(bad == Some(1), || format!("id-plus-right-shift prefix violation at {bad:?}, expected k = 1"));
    for n in 1..=max_n {
        let a = OperatorSpec::LeftShift.truncate(n).expect("n >= 1");
        let ok = reverses_sign(&a, &w.prefix(n), 0.0).unwrap_or(false);
        t.check(ok, || format!("left shift n = {n}: truncated witness not reversed"));
    }
    // sections of the shifts also yield a witness from the orthant search
    for n in 1..=enum_n {
        let a = OperatorSpec::LeftShift.truncate(n).expect("n >= 1");
        let found = find_sign_reversal_witness(&a, &ck.caps).ok().flatten();
        let ok = found.is_some_and(|x| reverses_sign(&a, &x, TOL).unwrap_or(false));
        t.check(ck.flip(ok), || format!("left shift n = {n}: no witness found"));
    }

    // block-Hadamard basis
    let mut ex6_witness = serde_json::Value::Null;
    for n in (2..=max_n).step_by(2) {
        let u = block_hadamard_unitary(n).expect("even n");
        let basis = BasisSpec::TransformedBy(u.clone());
        // (1, -1, 0, ...) in coordinates y = U^T x
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        x[1] = -1.0;
        let y = u.transpose().mul_vec(&x).expect("dims");
        let b6 = conjugate(&OperatorSpec::LowerBidiagonalTwos.truncate(n).unwrap().to_float(), &u, Side::UtTU).unwrap();
        t.check(reverses_sign(&b6, &y, TOL).unwrap_or(false), || format!("example-6 n = {n}: (1,-1,0,...) not reversed"));

        let b8 = conjugate(&OperatorSpec::BlockRotationMix.truncate(n).unwrap().to_float(), &u, Side::UtTU).unwrap();
        if n <= enum_n {
            let rel6 = p_test_relative(&OperatorSpec::LowerBidiagonalTwos, &basis, n, method(n), &ck.caps);
            match rel6 {
                Ok(r) => {
                    t.check(!ck.flip(r.is_p()), || format!("example-6 block-Hadamard n = {n}: reported P"));
                    if n == 4 {
                        let wv = r.witness.clone().unwrap_or_default();
                        let ok = wv.len() == 4 && wv.iter().zip([1.0, -1.0, 0.0, 0.0]).all(|(a, b)| (a - b).abs() < 1e-9);
                        t.check(ok, || format!("example-6 n = 4 witness {wv:?}, expected (1,-1,0,0)"));
                        ex6_witness = json!(wv);
                    }
                }
                Err(e) => t.check(false, || format!("example-6 block-Hadamard n = {n}: {e}")),
            }
            let rel8 = p_test_relative(&OperatorSpec::BlockRotationMix, &basis, n, method(n), &ck.caps);
            let ok = rel8.as_ref().map(|r| ck.flip(r.is_p())).unwrap_or(false);
            t.check(ok, || format!("example-8 block-Hadamard n = {n}: {:?}", rel8.map(|r| r.is_p())));
        } else {
            // block diagonal with P blocks [[1, 1], [-1, 1]]
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let want = match (i / 2 == j / 2, i % 2, j % 2) {
                        (false, _, _) => 0.0,
                        (true, 1, 0) => -1.0,
                        _ => 1.0,
                    };
                    (b8[(i, j)] - want).abs() <= TOL
                })
            });
            t.check(ck.flip(ok), || format!("example-8 block-Hadamard n = {n}: not the expected block form"));
        }
    }
    if max_n >= 4 {
        let u = block_hadamard_unitary(4).unwrap();
        t.check(!commutes(&OperatorSpec::LowerBidiagonalTwos, &u, 4, TOL).unwrap(), || "example-6: TU = UT".into());
        t.check(!commutes(&OperatorSpec::BlockRotationMix, &u, 4, TOL).unwrap(), || "example-8: TU = UT".into());
    }
    if max_n >= 2 {
        let b8 = p_test_relative(&OperatorSpec::BlockRotationMix, &BasisSpec::Standard, 2, Method::Both, &ck.caps);
        t.check(b8.map(|r| ck.flip(r.is_p())).unwrap_or(false), || "example-8 standard basis n = 2".into());
    }

    // compact diagonal: P at every size while the smallest entry is 1/n
    let smallest = OperatorSpec::CompactDiagonal.truncate(max_n).unwrap()[(max_n - 1, max_n - 1)].clone();
    t.check(smallest == Q::from_ratio(1, max_n as i64), || "example-11 smallest diagonal entry".into());

    // P but not positive definite for every n >= 2
    for n in 2..=max_n {
        let a = OperatorSpec::preset("example-17").unwrap().truncate(n).unwrap();
        t.check(!is_positive_definite(&a), || format!("example-17 n = {n}: positive definite"));
    }

    t.finish(
        3,
        "example-suite",
        json!({
            "max_n": max_n,
            "enumeration_limit": enum_n,
            "both_methods_limit": BOTH_LIMIT.min(enum_n),
            "witness_prefix_terms": 1000,
            "example_6_witness": ex6_witness,
            "example_11_smallest_diagonal": crate::scalar::format_rational(&smallest),
            "example_3_bounds": {"sup": sup.as_ref().map(crate::scalar::format_rational), "inf": crate::scalar::format_rational(&inf)},
        }),
    )
}

fn conjugation(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 4);
    let cases: Vec<(Matrix<Q>, Matrix<f64>)> = sizes(200, 2, 6, config.max_n)
        .into_iter()
        .enumerate()
        .map(|(k, n)| {
            let t = if k % 2 == 0 { random_p_matrix(n, &mut rng) } else { random_int_matrix(n, -3, 3, &mut rng) };
            (t, random_orthogonal(n, false, &mut rng))
        })
        .collect();
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, (t, u))| {
            let err = |e: crate::zoo::ZooError| format!("case {k}: {e}");
            let p_t = ck.is_p(t, Method::Both)?;
            let utut = conjugate(&t.to_float(), u, Side::UTUt).map_err(err)?;
            let rel = p_test_relative_matrix(&AnyMatrix::Float(utut), &BasisSpec::TransformedBy(u.clone()), Method::Minors, &ck.caps)
                .map_err(err)?;
            if p_t != rel.is_p() {
                return Err(format!("case {k}: is_p(T) = {p_t} but relative test of UTU^T gives {}", rel.is_p()));
            }
            let uttu = conjugate(&t.to_float(), u, Side::UtTU).map_err(err)?;
            let p_uttu = ck.is_p(&uttu, Method::Minors)?;
            let rel = p_test_relative_matrix(&AnyMatrix::Rational(t.clone()), &BasisSpec::TransformedBy(u.clone()), Method::SignReversal, &ck.caps)
                .map_err(err)?;
            if p_uttu != ck.flip(rel.is_p()) {
                return Err(format!("case {k}: is_p(U^T T U) = {p_uttu} but relative test of T gives {}", rel.is_p()));
            }
            Ok(p_t)
        })
        .collect();
    let p_count = results.iter().filter(|r| matches!(r, Ok(true))).count();
    let mut t = Tally::new();
    t.absorb(results.into_iter().map(|r| r.map(|_| ())).collect());
    t.finish(4, "conjugation", json!({"pairs": cases.len(), "p_cases": p_count}))
}

fn commuting_unitary(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 5);
    let cases: Vec<(Matrix<f64>, Matrix<f64>)> = sizes(200, 2, 6, config.max_n)
        .into_iter()
        .map(|n| {
            let u = random_orthogonal(n, true, &mut rng);
            let c: [f64; 3] = [rng.random_range(-1.0..3.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let u2 = u.matmul(&u).expect("square");
            let t = Matrix::identity(n)
                .scale(&c[0])
                .add(&u.scale(&c[1]))
                .and_then(|m| m.add(&u2.scale(&c[2])))
                .expect("same size");
            (t, u)
        })
        .collect();
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, (t, u))| {
            let tu = t.matmul(u).expect("dims");
            let ut = u.matmul(t).expect("dims");
            if tu.max_abs_diff(&ut) > 1e-9 {
                return Err(format!("case {k}: TU != UT"));
            }
            let p_t = ck.is_p(t, Method::Minors)?;
            let conj = conjugate(t, u, Side::UtTU).map_err(|e| e.to_string())?;
            let p_c = is_p_with_caps(&conj, Method::Minors, &ck.caps).map_err(|e| e.to_string())?.is_p;
            if p_t != p_c {
                return Err(format!("case {k}: is_p(T) = {p_t}, is_p(U^T T U) = {p_c}"));
            }
            Ok(p_t)
        })
        .collect();
    let p_count = results.iter().filter(|r| matches!(r, Ok(true))).count();
    let mut t = Tally::new();
    t.absorb(results.into_iter().map(|r| r.map(|_| ())).collect());
    t.finish(5, "commuting-unitary", json!({"pairs": cases.len(), "p_cases": p_count}))
}

fn inverse_closure(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 6);
    let cases: Vec<Matrix<Q>> = sizes(200, 2, 7, config.max_n).into_iter().map(|n| random_p_matrix(n, &mut rng)).collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, a)| {
            let inv = a.inverse().map_err(|e| format!("case {k}: {e}"))?;
            if a.matmul(&inv).expect("dims") != Matrix::identity(a.n()) {
                return Err(format!("case {k}: A A^-1 != I"));
            }
            if !ck.is_p(&inv, Method::Both)? {
                return Err(format!("case {k}: inverse is not P"));
            }
            Ok(())
        })
        .collect();
    let mut t = Tally::new();
    t.absorb(results);
    t.finish(6, "inverse-closure", json!({"p_matrices": cases.len()}))
}

fn positive_definite(config: &VerifyConfig, ck: &Checker) -> SuiteResult {
    let mut rng = suite_rng(config.seed, 7);
    let tenth = Q::from_ratio(1, 10);
    let cases: Vec<Matrix<Q>> = sizes(200, 1, 8, config.max_n)
        .into_iter()
        .map(|n| {
            let b = random_int_matrix(n, -3, 3, &mut rng);
            b.transpose().matmul(&b).unwrap().add(&Matrix::identity(n).scale(&tenth)).unwrap()
        })
        .collect();
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, a)| {
            let method = if a.n() <= PD_BOTH_LIMIT { Method::Both } else { Method::Minors };
            if !is_positive_definite(a) {
                return Err(format!("case {k}: B^T B + I/10 not positive definite"));
            }
            if !ck.is_p(a, method)? {
                return Err(format!("case {k}: positive definite matrix is not P"));
            }
            Ok(())
        })
        .collect();
    let mut t = Tally::new();
    t.absorb(results);
    let coupled = Matrix::<Q>::from_i64_rows(&[&[1, -7], &[0, 1]]);
    let p = ck.is_p(&coupled, Method::Both).unwrap_or(false);
    let pd = is_positive_definite(&coupled);
    t.check(p && !pd, || format!("[[1,-7],[0,1]]: is_p = {p}, positive definite = {pd}"));
    t.finish(7, "positive-definite", json!({"matrices": cases.len(), "shift": "1/10", "both_methods_limit": PD_BOTH_LIMIT}))
}

/// Recomputes suites 1-7 from scratch and compares the serialized bodies.
fn determinism(config: &VerifyConfig, first: &[SuiteResult]) -> SuiteResult {
    let ck = Checker { caps: Caps::default(), fault: config.inject_fault };
    let again = [
        oracle_equivalence(config, &ck),
        lcp_uniqueness(config, &ck),
        example_suite(config, &ck),
        conjugation(config, &ck),
        commuting_unitary(config, &ck),
        inverse_closure(config, &ck),
        positive_definite(config, &ck),
    ];
    let a = serde_json::to_string(first).expect("serializes");
    let b = serde_json::to_string(&again).expect("serializes");
    let mut t = Tally::new();
    t.check(a == b, || "second run produced a different report body".into());
    t.finish(8, "determinism", json!({"bytes": a.len()}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_p_matrices_are_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=5 {
            let a = random_p_matrix(n, &mut rng);
            assert!(is_p_by_minors(&a, &Caps::default()).unwrap().is_p);
        }
    }

    #[test]
    fn triangular_certificate_rejects_zero_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ok = OperatorSpec::IdPlusRightShift.truncate(20).unwrap();
        assert!(triangular_p_certificate(&ok, 16, &mut rng).is_ok());
        let bad = OperatorSpec::RightShift.truncate(20).unwrap();
        assert!(triangular_p_certificate(&bad, 16, &mut rng).is_err());
        let full = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(triangular_p_certificate(&full, 1, &mut rng).is_err());
    }

    #[test]
    fn small_regime_passes_and_fault_fails() {
        let good = run(&VerifyConfig { max_n: 4, seed: 7, inject_fault: false });
        let failing: Vec<_> = good.suites.iter().filter(|s| !s.passed).map(|s| (s.name, &s.failures)).collect();
        assert!(good.passed, "{failing:?}");
        let bad = run(&VerifyConfig { max_n: 4, seed: 7, inject_fault: true });
        assert!(!bad.passed);
    }
}
