//! Linear complementarity: find `z >= 0` with `w = Az + q >= 0` and `z^T w = 0`.
//!
//! Every solution is found by enumerating complementary supports, which is
//! what a uniqueness check needs (a pivoting method would find only one).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::error::LinalgError;
use crate::linalg::{AnyMatrix, Matrix, Vector};
use crate::pmatrix::Caps;
use crate::scalar::Scalar;

/// Duplicate solutions closer than this in max-norm are merged (float mode).
pub const MERGE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcpError {
    #[error("LCP support enumeration: n = {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcpInstance<T: Scalar> {
    a: Matrix<T>,
    q: Vector<T>,
}

impl<T: Scalar> LcpInstance<T> {
    pub fn new(a: Matrix<T>, q: Vector<T>) -> Result<Self, LcpError> {
        if q.len() != a.n() {
            return Err(LinalgError::DimensionMismatch { expected: a.n(), got: q.len() }.into());
        }
        Ok(LcpInstance { a, q })
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn q(&self) -> &Vector<T> {
        &self.q
    }

    /// `w = Az + q`.
    pub fn slack(&self, z: &[T]) -> Vector<T> {
        let az = self.a.mul_vec(z).expect("dimension checked at construction");
        az.iter().zip(self.q.iter()).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    /// Checks `z >= -tol`, `w >= -tol` and `|z^T w| <= tol`; exact for rationals when `tol = 0`.
    pub fn is_solution(&self, z: &[T], tol: f64) -> bool {
        let w = self.slack(z);
        let dot = z
            .iter()
            .zip(w.iter())
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        z.iter().chain(w.iter()).all(|v| v.as_f64() >= -tol || !v.is_negative())
            && (dot.is_zero() || dot.as_f64().abs() <= tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcpSolution<T> {
    pub z: Vector<T>,
    /// 1-based supports that produced this `z`, in enumeration order.
    pub supports: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcpSolutionSet<T> {
    pub solutions: Vec<LcpSolution<T>>,
}

impl<T: Scalar> LcpSolutionSet<T> {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "count": self.solutions.len(),
            "solutions": self.solutions.iter().map(|s| json!({
                "z": s.z.to_json(),
                "supports": s.supports,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Candidate for support `mask`: `z` off the support is 0 and `w` on it is 0.
fn support_candidate<T: Scalar>(inst: &LcpInstance<T>, mask: u64) -> Option<Vector<T>> {
    let n = inst.a.n();
    let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    let mut z = vec![T::zero(); n];
    if !idx.is_empty() {
        let sub = inst.a.submatrix_zero_based(&idx);
        let rhs: Vec<T> = idx.iter().map(|&i| -inst.q[i].clone()).collect();
        let za = sub.solve(&rhs).ok()?;
        for (k, &i) in idx.iter().enumerate() {
            z[i] = za[k].clone();
        }
    }
    let scale = inst.q.max_abs().max(1.0);
    if idx.iter().any(|&i| z[i].is_negative_at(scale)) {
        return None;
    }
    let w = inst.slack(&z);
    if (0..n).filter(|i| mask >> i & 1 == 0).any(|i| w[i].is_negative_at(scale)) {
        return None;
    }
    Some(Vector::new(z))
}

fn same_point<T: Scalar>(x: &Vector<T>, y: &Vector<T>) -> bool {
    x.iter().zip(y.iter()).all(|(a, b)| a.close_to(b, MERGE_TOL))
}

pub fn lcp_solve_all<T: Scalar>(inst: &LcpInstance<T>, caps: &Caps) -> Result<LcpSolutionSet<T>, LcpError> {
    let n = inst.a.n();
    if n > caps.lcp {
        return Err(LcpError::CapExceeded { n, cap: caps.lcp });
    }
    let candidates: Vec<(u64, Vector<T>)> = (0..1u64 << n)
        .into_par_iter()
        .filter_map(|mask| support_candidate(inst, mask).map(|z| (mask, z)))
        .collect();
    let mut solutions: Vec<LcpSolution<T>> = Vec::new();
    for (mask, z) in candidates {
        let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        match solutions.iter_mut().find(|s| same_point(&s.z, &z)) {
            Some(s) => s.supports.push(support),
            None => solutions.push(LcpSolution { z, supports: vec![support] }),
        }
    }
    Ok(LcpSolutionSet { solutions })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniquenessReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Solution count per sample, in draw order.
    pub per_sample: Vec<usize>,
    /// Solution count -> number of samples.
    pub counts: BTreeMap<usize, usize>,
    pub violating_q: Option<Vec<f64>>,
}

impl UniquenessReport {
    pub fn all_unique(&self) -> bool {
        self.violating_q.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> =
            self.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "counts": counts,
            "all_unique": self.all_unique(),
            "violating_q": self.violating_q,
        })
    }
}

/// Draws `samples` vectors `q` uniform on `[-1, 1]^n` from a ChaCha8 stream
/// seeded with `seed` and counts LCP solutions for each.
pub fn lcp_unique_for_samples<T: Scalar>(
    a: &Matrix<T>,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<UniquenessReport, LcpError> {
    let n = a.n();
    if n > caps.lcp {
        return Err(LcpError::CapExceeded { n, cap: caps.lcp });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<f64>> = (0..samples)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    let per_sample = draws
        .iter()
        .map(|q| {
            let inst = LcpInstance::new(a.clone(), q.iter().map(|&v| T::from_f64(v)).collect())?;
            Ok(lcp_solve_all(&inst, caps)?.len())
        })
        .collect::<Result<Vec<_>, LcpError>>()?;
    let mut counts = BTreeMap::new();
    for &c in &per_sample {
        *counts.entry(c).or_insert(0) += 1;
    }
    let violating_q = per_sample.iter().position(|&c| c != 1).map(|i| draws[i].clone());
    Ok(UniquenessReport { n, samples, seed, per_sample, counts, violating_q })
}

pub fn lcp_unique_for_samples_any(
    a: &AnyMatrix,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<UniquenessReport, LcpError> {
    match a {
        AnyMatrix::Float(m) => lcp_unique_for_samples(m, samples, seed, caps),
        AnyMatrix::Rational(m) => lcp_unique_for_samples(m, samples, seed, caps),
    }
}
