//! Scalar kinds used throughout the crate.
//!
//! Two kinds are supported: exact rationals (`BigRational`) for integer and
//! rational data, and `f64` for anything involving irrational entries such as
//! the `1/sqrt(2)` unitaries. Every sign decision goes through
//! [`Scalar::negligible`], so the tolerance policy lives in exactly one place.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseScalarError;

/// Absolute tolerance for float comparisons, scaled by `max(1, magnitude)`.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Float,
    Rational,
}

impl Display for ScalarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarKind::Float => f.write_str("float"),
            ScalarKind::Rational => f.write_str("rational"),
        }
    }
}

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    const KIND: ScalarKind;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; exact for rationals.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn as_f64(&self) -> f64;

    /// Exact for rationals (every finite `f64` is a dyadic rational).
    fn from_f64(v: f64) -> Self;

    /// True when `self` must be treated as zero at the given magnitude scale.
    /// Exact kinds only treat zero itself as negligible.
    fn negligible(&self, scale: f64) -> bool;

    /// Equality within an absolute tolerance; exact kinds ignore `tol`.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    fn to_json(&self) -> serde_json::Value;

    fn is_positive_at(&self, scale: f64) -> bool {
        self.is_positive() && !self.negligible(scale)
    }

    fn is_negative_at(&self, scale: f64) -> bool {
        self.is_negative() && !self.negligible(scale)
    }

    /// `self >= 0` up to tolerance.
    fn is_nonnegative_at(&self, scale: f64) -> bool {
        !self.is_negative_at(scale)
    }

    /// `self <= 0` up to tolerance.
    fn is_nonpositive_at(&self, scale: f64) -> bool {
        !self.is_positive_at(scale)
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= TOL * scale.abs().max(1.0)
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

impl Scalar for BigRational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"0.1"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let t = s.trim();
    let bad = || ParseScalarError(t.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let whole = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let digits = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let mut mag = BigRational::new(whole.abs() * &den + digits, den);
        if negative {
            mag = -mag;
        }
        return Ok(mag);
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Converts an integer-valued or decimal JSON number / `"p/q"` string into a rational.
pub fn rational_from_json(v: &serde_json::Value) -> Result<BigRational, ParseScalarError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_i64(i))
            } else {
                parse_rational(&n.to_string())
            }
        }
        other => Err(ParseScalarError(other.to_string())),
    }
}

pub fn float_from_json(v: &serde_json::Value) -> Result<f64, ParseScalarError> {
    match v {
        serde_json::Value::Number(n) => n.as_f64().ok_or_else(|| ParseScalarError(n.to_string())),
        serde_json::Value::String(s) => {
            if s.contains('/') {
                Ok(Scalar::as_f64(&parse_rational(s)?))
            } else {
                s.trim().parse::<f64>().map_err(|_| ParseScalarError(s.clone()))
            }
        }
        other => Err(ParseScalarError(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::from_ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), BigRational::from_i64(-7));
        assert_eq!(parse_rational("0.1").unwrap(), BigRational::from_ratio(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), BigRational::from_ratio(-5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), BigRational::from_ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn format_round_trips() {
        let r = BigRational::from_ratio(-22, 7);
        assert_eq!(format_rational(&r), "-22/7");
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn float_tolerance_scales_with_magnitude() {
        assert!(1e-10f64.negligible(1.0));
        assert!(!1e-8f64.negligible(1.0));
        assert!(1e-8f64.negligible(100.0));
        assert!(!BigRational::from_ratio(1, 1_000_000_000_000).negligible(1.0));
    }
}
