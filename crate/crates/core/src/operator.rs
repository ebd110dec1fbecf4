//! The operator-algebra abstraction shared by every expansion.
//!
//! Two backends implement [`Operator`]: dense matrices ([`crate::Matrix`])
//! and free noncommutative elements ([`crate::FreeElement`]). Polynomials in
//! a real variable with operator coefficients ([`crate::OpPoly`]) are a third,
//! derived, backend.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Which backend an operator lives in and, for matrices, its dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Free,
    Dense { rows: usize, cols: usize },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Free => write!(f, "free"),
            Shape::Dense { rows, cols } => write!(f, "{rows}x{cols}"),
        }
    }
}

/// An element of a unital associative algebra over the rationals.
///
/// Arithmetic methods assume compatible operands; public entry points check
/// shapes with [`ensure_compatible`] before calling them.
pub trait Operator: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn shape(&self) -> Shape;
    fn zero_like(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Largest absolute coefficient, used as the defect norm.
    fn max_abs(&self) -> f64;
    fn try_inverse(&self) -> Option<Self>;

    fn is_identity(&self) -> bool {
        self.sub(&self.identity_like()).is_zero()
    }
}

pub fn ensure_compatible<O: Operator>(a: &O, b: &O) -> Result<()> {
    if a.shape() == b.shape() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(a.shape(), b.shape()))
    }
}

pub fn commutator<O: Operator>(a: &O, b: &O) -> O {
    a.mul(b).sub(&b.mul(a))
}

/// `ad_a^n b`, with `ad^0 = b` and `ad^n = [a, ad^{n-1} b]`.
pub fn ad_pow<O: Operator>(a: &O, b: &O, n: usize) -> Result<O> {
    ensure_compatible(a, b)?;
    Ok((0..n).fold(b.clone(), |acc, _| commutator(a, &acc)))
}

pub fn pow<O: Operator>(a: &O, n: usize) -> O {
    (0..n).fold(a.identity_like(), |acc, _| acc.mul(a))
}

/// Sum of an iterator of operators; `like` fixes the shape of an empty sum.
pub fn sum<'a, O: Operator + 'a>(like: &O, items: impl IntoIterator<Item = &'a O>) -> O {
    items.into_iter().fold(like.zero_like(), |acc, x| acc.add(x))
}
