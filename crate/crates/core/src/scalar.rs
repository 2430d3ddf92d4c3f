//! Scalars shared by the exact and floating-point paths of the model.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{qi, sqrt_exact, to_f64, Q};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_q(v: &Q) -> Self;
    /// Square root; on the exact path this fails unless `self` is a square.
    fn sqrt(&self) -> Result<Self>;
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Conversion of a cached constant that also carries an `f64` copy.
    fn from_cached(exact: &Q, _approx: f64) -> Self {
        Self::from_q(exact)
    }

    fn half() -> Self {
        Self::from_i64(1) / Self::from_i64(2)
    }
}

impl Scalar for Q {
    fn from_i64(v: i64) -> Self {
        qi(v)
    }

    fn from_q(v: &Q) -> Self {
        v.clone()
    }

    fn sqrt(&self) -> Result<Self> {
        sqrt_exact(self).ok_or_else(|| Error::NotASquare(self.to_string()))
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_q(v: &Q) -> Self {
        to_f64(v)
    }

    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::InvalidArgument(format!("square root of {self}")));
        }
        Ok(f64::sqrt(*self))
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_cached(_exact: &Q, approx: f64) -> Self {
        approx
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::from_i64(0), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn axpy<S: Scalar>(a: &[S], s: &S, b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + s.clone() * y.clone()).collect()
}

pub(crate) fn scaled<S: Scalar>(s: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}
