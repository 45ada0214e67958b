use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::zoo::{SequenceGen, ZooError};

/// A bounded operator on `l2`, described by its (banded) matrix in the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorSpec {
    /// `x -> (a_1 x_1, a_2 x_2, ...)`; the sequence must be bounded.
    Diagonal(SequenceGen),
    /// `x -> (0, x_1, x_2, ...)`
    RightShift,
    /// `x -> (x_2, x_3, ...)`
    LeftShift,
    IdPlusRightShift,
    IdPlusLeftShift,
    /// `x -> (x_1, 2x_1 + x_2, 2x_2 + x_3, ...)`
    LowerBidiagonalTwos,
    /// `x -> (x_1 - x_2, x_1 + x_2, x_3 - x_4, x_3 + x_4, ...)`
    BlockRotationMix,
    /// `x -> (x_1 + c x_2, x_2, x_3, ...)`
    FirstEntryCoupled { coupling: BigRational },
    /// `x -> (x_1, x_2/2, x_3/3, ...)`
    CompactDiagonal,
}

pub const PRESETS: &[&str] = &[
    "example-3-diagonal",
    "example-4-right-shift",
    "example-4-left-shift",
    "example-5-id-plus-right-shift",
    "example-5-id-plus-left-shift",
    "example-6",
    "example-8",
    "example-11",
    "example-17",
];

impl OperatorSpec {
    pub fn diagonal(seq: SequenceGen) -> Result<Self, ZooError> {
        if seq.sup_abs().is_none() {
            return Err(ZooError::Unbounded(seq.name()));
        }
        Ok(OperatorSpec::Diagonal(seq))
    }

    pub fn preset(name: &str) -> Result<Self, ZooError> {
        Ok(match name {
            "example-3-diagonal" => OperatorSpec::Diagonal(SequenceGen::OnePlusHarmonic),
            "example-4-right-shift" => OperatorSpec::RightShift,
            "example-4-left-shift" => OperatorSpec::LeftShift,
            "example-5-id-plus-right-shift" => OperatorSpec::IdPlusRightShift,
            "example-5-id-plus-left-shift" => OperatorSpec::IdPlusLeftShift,
            "example-6" => OperatorSpec::LowerBidiagonalTwos,
            "example-8" => OperatorSpec::BlockRotationMix,
            "example-11" => OperatorSpec::CompactDiagonal,
            "example-17" => OperatorSpec::FirstEntryCoupled { coupling: BigRational::from_i64(-7) },
            other => return Err(ZooError::UnknownPreset(other.to_string())),
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            OperatorSpec::Diagonal(_) => "diagonal",
            OperatorSpec::RightShift => "right-shift",
            OperatorSpec::LeftShift => "left-shift",
            OperatorSpec::IdPlusRightShift => "id-plus-right-shift",
            OperatorSpec::IdPlusLeftShift => "id-plus-left-shift",
            OperatorSpec::LowerBidiagonalTwos => "lower-bidiagonal-twos",
            OperatorSpec::BlockRotationMix => "block-rotation-mix",
            OperatorSpec::FirstEntryCoupled { .. } => "first-entry-coupled",
            OperatorSpec::CompactDiagonal => "compact-diagonal",
        }
    }

    /// Kinds built from 2x2 blocks; their truncations need even `n`.
    pub fn is_block(&self) -> bool {
        matches!(self, OperatorSpec::BlockRotationMix)
    }

    /// Nonzero entries `(j, T_kj)` of row `k`, both 1-based. Every kind is banded,
    /// so `(Tx)_k` is a finite combination of entries of `x`.
    pub fn row_entries(&self, k: usize) -> Vec<(usize, BigRational)> {
        assert!(k >= 1, "rows are indexed from 1");
        let one = BigRational::one;
        match self {
            OperatorSpec::Diagonal(seq) => vec![(k, seq.term(k))],
            OperatorSpec::CompactDiagonal => vec![(k, BigRational::from_ratio(1, k as i64))],
            OperatorSpec::RightShift => {
                if k > 1 {
                    vec![(k - 1, one())]
                } else {
                    vec![]
                }
            }
            OperatorSpec::LeftShift => vec![(k + 1, one())],
            OperatorSpec::IdPlusRightShift => {
                let mut r = Vec::new();
                if k > 1 {
                    r.push((k - 1, one()));
                }
                r.push((k, one()));
                r
            }
            OperatorSpec::IdPlusLeftShift => vec![(k, one()), (k + 1, one())],
            OperatorSpec::LowerBidiagonalTwos => {
                let mut r = Vec::new();
                if k > 1 {
                    r.push((k - 1, BigRational::from_i64(2)));
                }
                r.push((k, one()));
                r
            }
            OperatorSpec::BlockRotationMix => {
                if k % 2 == 1 {
                    vec![(k, one()), (k + 1, -one())]
                } else {
                    vec![(k - 1, one()), (k, one())]
                }
            }
            OperatorSpec::FirstEntryCoupled { coupling } => {
                if k == 1 {
                    vec![(1, one()), (2, coupling.clone())]
                } else {
                    vec![(k, one())]
                }
            }
        }
    }

    /// Top-left `n x n` section, entry `(i, j) = <T e_j, e_i>`.
    pub fn truncate(&self, n: usize) -> Result<Matrix<BigRational>, ZooError> {
        if n == 0 {
            return Err(ZooError::BadSize { kind: self.kind_name(), n, reason: "n must be at least 1" });
        }
        if self.is_block() && n % 2 == 1 {
            return Err(ZooError::BadSize { kind: self.kind_name(), n, reason: "block kinds need even n" });
        }
        let mut m = Matrix::zeros(n);
        for i in 1..=n {
            for (j, v) in self.row_entries(i) {
                if j <= n && !v.is_zero() {
                    m[(i - 1, j - 1)] = v;
                }
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let params = match self {
            OperatorSpec::Diagonal(seq) => json!({"sequence": seq.to_json()}),
            OperatorSpec::FirstEntryCoupled { coupling } => json!({"coupling": coupling.to_json()}),
            _ => json!({}),
        };
        json!({"kind": self.kind_name(), "params": params})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ZooError> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| ZooError::BadParams("operator spec needs a \"kind\"".into()))?;
        let params = v.get("params").cloned().unwrap_or_else(|| json!({}));
        Ok(match kind {
            "diagonal" => {
                let seq = params
                    .get("sequence")
                    .ok_or_else(|| ZooError::BadParams("diagonal needs params.sequence".into()))?;
                OperatorSpec::diagonal(SequenceGen::from_json(seq)?)?
            }
            "right-shift" => OperatorSpec::RightShift,
            "left-shift" => OperatorSpec::LeftShift,
            "id-plus-right-shift" => OperatorSpec::IdPlusRightShift,
            "id-plus-left-shift" => OperatorSpec::IdPlusLeftShift,
            "lower-bidiagonal-twos" => OperatorSpec::LowerBidiagonalTwos,
            "block-rotation-mix" => OperatorSpec::BlockRotationMix,
            "first-entry-coupled" => {
                let coupling = match params.get("coupling") {
                    None => BigRational::from_i64(-7),
                    Some(c) => crate::scalar::rational_from_json(c)
                        .map_err(|e| ZooError::BadParams(e.to_string()))?,
                };
                OperatorSpec::FirstEntryCoupled { coupling }
            }
            "compact-diagonal" => OperatorSpec::CompactDiagonal,
            other => return Err(ZooError::BadParams(format!("unknown operator kind {other:?}"))),
        })
    }
}
