//! Scalar fields used as matrix entries.
//!
//! [`Rational`] is the exact default; `f64` backs the float mode of the
//! continuum-limit machinery.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when `self` is zero.
    fn recip(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn abs_f64(&self) -> f64;
    fn to_f64(&self) -> f64;
    /// Pivot quality for elimination; larger is better.
    fn pivot_weight(&self) -> f64 {
        self.abs_f64()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self))
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn abs_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    // any nonzero pivot is exact
    fn pivot_weight(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return int(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
