//! Coefficient scalars: exact rationals and `f64`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Relative tolerance used when comparing floating-point results.
pub const FLOAT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    Exact,
    Float,
}

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn half(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact equality for rationals; `FLOAT_REL_TOL` relative to `scale`
    /// (at least 1) for floats.
    fn close(&self, other: &Self, scale: f64) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    #[inline]
    fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }
}

impl Scalar for BigRational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn half(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn close(&self, other: &Self, _scale: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap())),
            other => Err(Error::Parse(format!(
                "expected rational \"n/d\", got {other}"
            ))),
        }
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        Scalar::to_f64(r)
    }

    fn half(&self) -> Self {
        self * 0.5
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn close(&self, other: &Self, scale: f64) -> bool {
        (self - other).abs() <= FLOAT_REL_TOL * scale.max(1.0)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::String(s) => parse_rational(s).map(|r| Scalar::to_f64(&r)),
            other => Err(Error::Parse(format!("expected number, got {other}"))),
        }
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Short human form: integers as `n`, otherwise `n/d`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn abs_f64<S: Scalar>(s: &S) -> f64 {
    s.to_f64().abs()
}
