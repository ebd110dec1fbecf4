use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::{Operator, Shape};
use crate::scalar::Rational;

type M = Matrix<Rational>;

/// A square-matrix-valued Laurent polynomial in one or two spectral
/// parameters. Exponents are `(e1, e2)`; one-variable polynomials keep
/// `e2 = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixPoly {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<(i32, i32), M>,
}

impl MatrixPoly {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        assert!(nvars == 1 || nvars == 2, "one or two spectral parameters");
        Self {
            nvars,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: M, nvars: usize) -> Self {
        Self::monomial(m, (0, 0), nvars)
    }

    pub fn monomial(m: M, exps: (i32, i32), nvars: usize) -> Self {
        assert!(nvars == 2 || exps.1 == 0, "second exponent needs two variables");
        let mut p = Self::zero(nvars, m.rows());
        p.insert(exps, m);
        p
    }

    fn insert(&mut self, exps: (i32, i32), m: M) {
        let v = match self.terms.remove(&exps) {
            Some(old) => old.add(&m),
            None => m,
        };
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &M)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: (i32, i32)) -> M {
        self.terms.get(&exps).cloned().unwrap_or_else(|| M::zeros(self.dim, self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(min, max)` exponent of variable `k` (0-based); `(0, 0)` for zero.
    pub fn exponent_range(&self, k: usize) -> (i32, i32) {
        let pick = |e: &(i32, i32)| if k == 0 { e.0 } else { e.1 };
        let lo = self.terms.keys().map(pick).min().unwrap_or(0);
        let hi = self.terms.keys().map(pick).max().unwrap_or(0);
        (lo, hi)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::ShapeMismatch(self.shape(), rhs.shape()));
        }
        if self.nvars != rhs.nvars {
            return Err(Error::InvalidArgument("variable counts differ".into()));
        }
        Ok(())
    }

    fn shape(&self) -> Shape {
        Shape::Dense {
            rows: self.dim,
            cols: self.dim,
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (&e, m) in &rhs.terms {
            out.insert(e, m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|m| m.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|m| m.scale(c))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero(self.nvars, self.dim);
        for (&(a1, a2), x) in &self.terms {
            for (&(b1, b2), y) in &rhs.terms {
                out.insert((a1 + b1, a2 + b2), x.mul(y));
            }
        }
        Ok(out)
    }

    /// Apply a map to every coefficient; the map may change the dimension.
    pub fn map(&self, f: impl Fn(&M) -> M) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (&e, m) in &self.terms {
            let v = f(m);
            out.dim = v.rows();
            out.insert(e, v);
        }
        if self.terms.is_empty() {
            out.dim = f(&M::zeros(self.dim, self.dim)).rows();
        }
        out
    }

    /// Evaluate at `(λ1)` or `(λ1, λ2)`; zero is rejected where a negative
    /// exponent occurs.
    pub fn eval(&self, point: &[Rational]) -> Result<M> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "expected {} evaluation values, got {}",
                self.nvars,
                point.len()
            )));
        }
        let mut out = M::zeros(self.dim, self.dim);
        for (&(e1, e2), m) in &self.terms {
            let c = power(&point[0], e1)? * if self.nvars == 2 { power(&point[1], e2)? } else { Rational::from_integer(1.into()) };
            out = out.add(&m.scale(&c));
        }
        Ok(out)
    }
}

fn power(x: &Rational, e: i32) -> Result<Rational> {
    if e < 0 && x.is_zero() {
        return Err(Error::SingularPoint);
    }
    Ok(num_traits::pow::Pow::pow(x, e))
}
