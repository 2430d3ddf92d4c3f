//! Exact rational scalars and their JSON encoding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Q = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root, if `x` is the square of a non-negative rational.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer();
    let den = x.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

/// Parses `"p/q"`, `"p"` or a short decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Ok(v) = s.parse::<Q>() {
        return Ok(v);
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        if let Ok(n) = digits.parse::<BigInt>() {
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let v = Q::new(n, scale);
            return Ok(if neg { -v } else { v });
        }
    }
    Err(Error::Parse(format!("not a rational number: {s:?}")))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Serializes a rational as a `[numerator, denominator]` pair of integers.
///
/// Components that overflow `i64` are written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPair(pub Q);

impl From<Q> for RatPair {
    fn from(v: Q) -> Self {
        RatPair(v)
    }
}

impl fmt::Display for RatPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn ser_int<S: SerializeTuple>(t: &mut S, v: &BigInt) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(i) => t.serialize_element(&i),
        None => t.serialize_element(&v.to_string()),
    }
}

impl Serialize for RatPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        ser_int(&mut t, self.0.numer())?;
        ser_int(&mut t, self.0.denom())?;
        t.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            IntOrString::Int(i) => Ok(BigInt::from(i)),
            IntOrString::Str(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for RatPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = RatPair;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [numerator, denominator] pair")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<RatPair, A::Error> {
                let n: IntOrString = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let d: IntOrString = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let n = n.into_bigint()?;
                let d = d.into_bigint()?;
                if d.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(RatPair(Q::new(n, d)))
            }
        }
        d.deserialize_tuple(2, PairVisitor)
    }
}
