use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

use crate::scalar::{format_rational, parse_rational, Scalar};
use crate::zoo::ZooError;

/// Closed-form rational sequence `k -> x_k`, `k >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceGen {
    Constant(BigRational),
    /// `1/k`
    Harmonic,
    /// `(-1)^(k+1) / k`
    AlternatingHarmonic,
    /// `1 + 1/k`
    OnePlusHarmonic,
    /// `k`; unbounded.
    Index,
}

impl SequenceGen {
    pub fn term(&self, k: usize) -> BigRational {
        assert!(k >= 1, "sequences are indexed from 1");
        let inv = BigRational::from_ratio(1, k as i64);
        match self {
            SequenceGen::Constant(c) => c.clone(),
            SequenceGen::Harmonic => inv,
            SequenceGen::AlternatingHarmonic => {
                if k % 2 == 1 {
                    inv
                } else {
                    -inv
                }
            }
            SequenceGen::OnePlusHarmonic => BigRational::one() + inv,
            SequenceGen::Index => BigRational::from_i64(k as i64),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<BigRational> {
        (1..=n).map(|k| self.term(k)).collect()
    }

    pub fn name(&self) -> String {
        match self {
            SequenceGen::Constant(c) => format!("constant {}", format_rational(c)),
            SequenceGen::Harmonic => "1/n".into(),
            SequenceGen::AlternatingHarmonic => "(-1)^(n+1)/n".into(),
            SequenceGen::OnePlusHarmonic => "1 + 1/n".into(),
            SequenceGen::Index => "n".into(),
        }
    }

    /// `sup |x_k|`, or `None` when unbounded.
    pub fn sup_abs(&self) -> Option<BigRational> {
        match self {
            SequenceGen::Constant(c) => Some(c.abs()),
            SequenceGen::Harmonic | SequenceGen::AlternatingHarmonic => Some(BigRational::one()),
            SequenceGen::OnePlusHarmonic => Some(BigRational::from_i64(2)),
            SequenceGen::Index => None,
        }
    }

    /// `inf x_k` (not necessarily attained).
    pub fn inf(&self) -> BigRational {
        match self {
            SequenceGen::Constant(c) => c.clone(),
            SequenceGen::Harmonic => BigRational::from_i64(0),
            SequenceGen::AlternatingHarmonic => BigRational::from_ratio(-1, 2),
            SequenceGen::OnePlusHarmonic | SequenceGen::Index => BigRational::one(),
        }
    }

    fn rule(&self) -> &'static str {
        match self {
            SequenceGen::Constant(_) => "constant",
            SequenceGen::Harmonic => "harmonic",
            SequenceGen::AlternatingHarmonic => "alternating-harmonic",
            SequenceGen::OnePlusHarmonic => "one-plus-harmonic",
            SequenceGen::Index => "index",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SequenceGen::Constant(c) => json!({"rule": "constant", "value": format_rational(c)}),
            other => json!({"rule": other.rule()}),
        }
    }

    /// Accepts `{"rule": ..., "value": ...}` or a bare rule string.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, ZooError> {
        let (rule, obj) = match v {
            serde_json::Value::String(s) => (s.as_str(), None),
            serde_json::Value::Object(o) => (
                o.get("rule")
                    .and_then(|r| r.as_str())
                    .ok_or_else(|| ZooError::BadParams("sequence needs a \"rule\"".into()))?,
                Some(o),
            ),
            other => return Err(ZooError::BadParams(format!("bad sequence: {other}"))),
        };
        Ok(match rule {
            "constant" => {
                let value = obj
                    .and_then(|o| o.get("value"))
                    .ok_or_else(|| ZooError::BadParams("constant sequence needs \"value\"".into()))?;
                let text = match value {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                SequenceGen::Constant(parse_rational(&text).map_err(|e| ZooError::BadParams(e.to_string()))?)
            }
            "harmonic" => SequenceGen::Harmonic,
            "alternating-harmonic" => SequenceGen::AlternatingHarmonic,
            "one-plus-harmonic" => SequenceGen::OnePlusHarmonic,
            "index" => SequenceGen::Index,
            other => return Err(ZooError::BadParams(format!("unknown sequence rule {other:?}"))),
        })
    }
}
