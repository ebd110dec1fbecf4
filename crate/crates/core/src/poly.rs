//! Polynomials in a real variable `x` with operator coefficients.
//!
//! These carry matrix-valued fields `A(x)` and make the Riemann integral an
//! exact, termwise operation.

use std::fmt;

use num_traits::Zero;

use crate::operator::{Operator, Shape};
use crate::scalar::{int, Rational};

/// `Σ_k c_k x^k`. The coefficient list is never empty and carries no
/// trailing zeros beyond the constant term.
#[derive(Clone, PartialEq, Debug)]
pub struct OpPoly<O> {
    coeffs: Vec<O>,
}

impl<O: Operator> OpPoly<O> {
    pub fn constant(c: O) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `c · x^k`.
    pub fn monomial(c: O, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<O>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs a constant term");
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(O::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[O] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> O {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn map<P: Operator>(&self, f: impl Fn(&O) -> P) -> OpPoly<P> {
        OpPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> O {
        self.coeffs
            .iter()
            .rev()
            .fold(self.coeffs[0].zero_like(), |acc, c| acc.scale(x).add(c))
    }

    /// Evaluation at a double; the point is converted exactly to a rational.
    pub fn eval_f64(&self, x: f64) -> O {
        self.eval(&Rational::from_float(x).expect("finite evaluation point"))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(self.coeffs[0].zero_like());
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&int(k as i64)))
                .collect(),
        )
    }

    /// `∫_{x0}^{x} p(t) dt` as a polynomial in `x`.
    pub fn integrate_from(&self, x0: &Rational) -> Self {
        let mut coeffs = vec![self.coeffs[0].zero_like()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rational::new(1.into(), ((k + 1) as i64).into()))),
        );
        let anti = Self::from_coeffs(coeffs);
        if x0.is_zero() {
            return anti;
        }
        let offset = anti.eval(x0);
        anti.sub(&Self::constant(offset))
    }

    fn zip_longest(&self, rhs: &Self, f: impl Fn(&O, &O) -> O) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| f(&self.coeff(k), &rhs.coeff(k))).collect())
    }
}

impl<O: Operator> Operator for OpPoly<O> {
    fn shape(&self) -> Shape {
        self.coeffs[0].shape()
    }
    fn zero_like(&self) -> Self {
        Self::constant(self.coeffs[0].zero_like())
    }
    fn identity_like(&self) -> Self {
        Self::constant(self.coeffs[0].identity_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.zip_longest(rhs, O::add)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.zip_longest(rhs, O::sub)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(out)
    }
    fn neg(&self) -> Self {
        self.map(O::neg)
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(O::is_zero)
    }
    fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(O::max_abs).fold(0.0, f64::max)
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.degree() == 0 {
            self.coeffs[0].try_inverse().map(Self::constant)
        } else {
            None
        }
    }
}

impl<O: Operator + fmt::Display> fmt::Display for OpPoly<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
