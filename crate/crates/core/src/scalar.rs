//! Numeric back ends.
//!
//! Counts, weights and harmonic values are computed either exactly
//! ([`Exact`], an arbitrary-precision rational) or in binary64. Every
//! algorithm in the crate is generic over [`Scalar`] so the same code path
//! serves both; callers pick the arithmetic by picking the model's weight
//! type (see [`crate::diagram::FloatView`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every exact computation.
pub type Exact = BigRational;

/// Relative tolerance used for float-mode counts and kernels.
pub const FLOAT_TOL: f64 = 1e-9;
/// Float-mode tolerance for harmonicity and row-sum residuals.
pub const HARMONIC_TOL: f64 = 1e-8;
/// Float-mode tolerance for aggregated identity residuals.
pub const IDENTITY_TOL: f64 = 1e-6;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;
    fn from_big(n: &BigUint) -> Self;
    fn from_i64(n: i64) -> Self {
        if n >= 0 {
            Self::from_u64(n as u64)
        } else {
            -Self::from_u64(n.unsigned_abs())
        }
    }
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    /// Exact binary expansion for rationals; identity for floats.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Natural logarithm, finite even when `to_f64` would overflow.
    fn ln(&self) -> f64;
    fn abs_val(&self) -> Self;

    /// Square root when it is representable: always for floats, only for
    /// squares of rationals in exact mode.
    fn sqrt(&self) -> Option<Self>;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// Whether `residual` is zero under the mode's tolerance policy:
    /// exact zero for rationals, `|residual| <= tol * max(|scale|, 1e-300)`
    /// for floats.
    fn negligible(residual: &Self, scale: &Self, tol: f64) -> bool {
        if Self::EXACT {
            residual.is_zero()
        } else {
            residual.to_f64().abs() <= tol * scale.to_f64().abs().max(1e-300)
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }
    fn from_big(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn pow(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_big(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        match ToPrimitive::to_f64(self) {
            Some(v) if v.is_finite() && (v != 0.0 || self.is_zero()) => v,
            _ => {
                let sign = if self.is_negative() { -1.0 } else { 1.0 };
                sign * Scalar::ln(&self.abs()).exp()
            }
        }
    }
    fn ln(&self) -> f64 {
        big_ln(self.numer()) - big_ln(self.denom())
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let exact_root = |n: &BigInt| {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        Some(BigRational::new(
            exact_root(self.numer())?,
            exact_root(self.denom())?,
        ))
    }
    fn pow(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

/// Natural log of the absolute value of a big integer (`-inf` for zero).
pub fn big_ln(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    big_uint_ln(mag)
}

pub fn big_uint_ln(mag: &BigUint) -> f64 {
    if mag.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigUint = mag >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn exact_int(n: impl Into<BigInt>) -> Exact {
    BigRational::from_integer(n.into())
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Renders an exact value as `p/q` (or `p`); floats in shortest round-trip form.
pub fn render<S: Scalar>(x: &S) -> String {
    format!("{x}")
}
