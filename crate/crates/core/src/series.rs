//! Truncated power series in the expansion parameter α with operator
//! coefficients.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::operator::{ensure_compatible, Operator};
use crate::scalar::{int, Rational};

/// `c_0 + c_1 α + … + c_D α^D`; products discard degrees above `D`.
#[derive(Clone, PartialEq, Debug)]
pub struct AlphaSeries<O> {
    coeffs: Vec<O>,
}

impl<O: Operator> AlphaSeries<O> {
    /// Fails on an empty coefficient list or mixed shapes.
    pub fn new(coeffs: Vec<O>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("series needs at least c_0".into()))?;
        for c in &coeffs[1..] {
            ensure_compatible(first, c)?;
        }
        Ok(Self { coeffs })
    }

    pub fn zero(like: &O, order: usize) -> Self {
        Self {
            coeffs: vec![like.zero_like(); order + 1],
        }
    }

    pub fn identity(like: &O, order: usize) -> Self {
        Self::constant(like.identity_like(), order)
    }

    pub fn constant(c: O, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// `1 + α a`, the linear Lax-type factor.
    pub fn one_plus_alpha(a: &O, order: usize) -> Self {
        let mut s = Self::identity(a, order);
        if order >= 1 {
            s.coeffs[1] = a.clone();
        }
        s
    }

    /// Build from `(degree, coefficient)` pairs; degrees above `order` are
    /// dropped, repeated degrees add up.
    pub fn from_terms(like: &O, order: usize, terms: impl IntoIterator<Item = (usize, O)>) -> Self {
        let mut s = Self::zero(like, order);
        for (d, c) in terms {
            if d <= order {
                s.coeffs[d] = s.coeffs[d].add(&c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &O {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[O] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<O> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: O) {
        self.coeffs[k] = c;
    }

    fn like(&self) -> &O {
        &self.coeffs[0]
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch(self.order(), rhs.order()));
        }
        ensure_compatible(self.like(), rhs.like())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a.add(b)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a.sub(b)))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&O, &O) -> O) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(O::neg)
    }

    pub fn map<P: Operator>(&self, f: impl Fn(&O) -> P) -> AlphaSeries<P> {
        AlphaSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Left-multiply every coefficient by a fixed operator.
    pub fn left_mul(&self, a: &O) -> Self {
        self.map(|c| a.mul(c))
    }

    pub fn right_mul(&self, a: &O) -> Self {
        self.map(|c| c.mul(a))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let d = self.order();
        let coeffs = (0..=d)
            .map(|k| {
                (0..=k).fold(self.like().zero_like(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Change the truncation order, padding with zeros when raising it.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<O> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, self.like().zero_like());
        Self { coeffs }
    }

    /// The substitution α ↦ −α.
    pub fn neg_alpha(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse by Neumann iteration around `c_0^{-1}`.
    pub fn inverse(&self) -> Result<Self> {
        let c0_inv = self.like().try_inverse().ok_or(Error::NotInvertible)?;
        // t = c0 (1 + u), u = c0^{-1}(t - c0); t^{-1} = (Σ (-u)^k) c0^{-1}
        let mut u = self.left_mul(&c0_inv);
        u.coeffs[0] = u.like().zero_like();
        let minus_u = u.neg();
        let id = Self::identity(self.like(), self.order());
        let mut power = id.clone();
        let mut acc = id;
        for _ in 0..self.order() {
            power = power.mul_unchecked(&minus_u);
            acc = acc.zip(&power, |a, b| a.add(b));
        }
        Ok(acc.right_mul(&c0_inv))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(O::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_identity() && self.coeffs[1..].iter().all(O::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(O::max_abs).fold(0.0, f64::max)
    }

    /// Per-order defect norms of `self − rhs`.
    pub fn defects(&self, rhs: &Self) -> Result<Vec<f64>> {
        Ok(self.sub(rhs)?.coeffs.iter().map(O::max_abs).collect())
    }
}

pub fn series_mul<O: Operator>(a: &AlphaSeries<O>, b: &AlphaSeries<O>) -> Result<AlphaSeries<O>> {
    a.mul(b)
}

/// `Σ_{n=0}^{D} q^n / n!`; requires a zero constant term.
pub fn series_exp<O: Operator>(q: &AlphaSeries<O>) -> Result<AlphaSeries<O>> {
    if !q.coeff(0).is_zero() {
        return Err(Error::NonZeroConstant);
    }
    let d = q.order();
    let mut term = AlphaSeries::identity(q.like(), d);
    let mut acc = term.clone();
    for n in 1..=d {
        term = term.mul_unchecked(q).scale(&Rational::new(1.into(), (n as i64).into()));
        acc = acc.zip(&term, |a, b| a.add(b));
    }
    Ok(acc)
}

/// `Σ_{n≥1} (−1)^{n+1} (t − 1)^n / n`; requires an identity constant term.
pub fn series_log<O: Operator>(t: &AlphaSeries<O>) -> Result<AlphaSeries<O>> {
    if !t.coeff(0).is_identity() {
        return Err(Error::NonIdentityConstant);
    }
    let d = t.order();
    let mut u = t.clone();
    u.coeffs[0] = t.like().zero_like();
    let mut power = u.clone();
    let mut acc = AlphaSeries::zero(t.like(), d);
    for n in 1..=d {
        let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
        acc = acc.zip(&power.scale(&(sign / int(n as i64))), |a, b| a.add(b));
        power = power.mul_unchecked(&u);
    }
    Ok(acc)
}

impl<O: Operator + fmt::Display> fmt::Display for AlphaSeries<O> {
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
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·α")?,
                _ => write!(f, "({c})·α^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{FreeElement, Letter};
    use crate::matrix::Matrix;
    use crate::scalar::rat;

    type M = Matrix<Rational>;

    fn scalar(v: Rational) -> M {
        M::scalar(1, v)
    }

    fn scalar_series(vals: &[Rational]) -> AlphaSeries<M> {
        AlphaSeries::new(vals.iter().cloned().map(scalar).collect()).unwrap()
    }

    #[test]
    fn binomial_square() {
        let a = AlphaSeries::one_plus_alpha(&scalar(int(1)), 2);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, scalar_series(&[int(1), int(2), int(1)]));
        let id = AlphaSeries::identity(&scalar(int(1)), 2);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn free_order_preserved() {
        let x = FreeElement::letter(Letter::new("X", 1, 1));
        let y = FreeElement::letter(Letter::new("Y", 1, 1));
        let p = AlphaSeries::one_plus_alpha(&x, 2)
            .mul(&AlphaSeries::one_plus_alpha(&y, 2))
            .unwrap();
        assert_eq!(p.coeff(1), &x.add(&y));
        assert_eq!(p.coeff(2), &x.mul(&y));
    }

    #[test]
    fn scalar_exp() {
        let q = scalar_series(&[int(0), int(2), int(0), int(0)]);
        let e = series_exp(&q).unwrap();
        assert_eq!(e, scalar_series(&[int(1), int(2), int(2), rat(4, 3)]));
        let zero = AlphaSeries::zero(&scalar(int(1)), 3);
        assert!(series_exp(&zero).unwrap().is_identity());
    }

    #[test]
    fn scalar_log() {
        let t = scalar_series(&[int(1), int(2), int(1), int(0)]);
        assert_eq!(
            series_log(&t).unwrap(),
            scalar_series(&[int(0), int(2), int(-1), rat(2, 3)])
        );
        assert!(series_log(&AlphaSeries::identity(&scalar(int(1)), 3)).unwrap().is_zero());
    }

    #[test]
    fn log_matches_symmetric_polynomials() {
        let t1 = M::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(3)]]);
        let t2 = M::from_rows(vec![vec![int(0), int(1)], vec![int(-1), rat(1, 2)]]);
        let t3 = M::from_rows(vec![vec![int(2), int(0)], vec![int(5), int(1)]]);
        let t = AlphaSeries::new(vec![M::identity(2), t1.clone(), t2.clone(), t3.clone()]).unwrap();
        let q = series_log(&t).unwrap();
        let half = rat(1, 2);
        assert_eq!(q.coeff(2), &t2.sub(&t1.mul(&t1).scale(&half)));
        let q3 = t3
            .sub(&t1.mul(&t2).add(&t2.mul(&t1)).scale(&half))
            .add(&t1.mul(&t1).mul(&t1).scale(&rat(1, 3)));
        assert_eq!(q.coeff(3), &q3);
    }

    #[test]
    fn domain_errors() {
        let bad = scalar_series(&[int(1), int(1)]);
        assert_eq!(series_exp(&bad), Err(Error::NonZeroConstant));
        let bad = scalar_series(&[int(2), int(1)]);
        assert_eq!(series_log(&bad), Err(Error::NonIdentityConstant));
        let a = scalar_series(&[int(1), int(1)]);
        let b = scalar_series(&[int(1), int(1), int(1)]);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(1, 2)));
        let c = AlphaSeries::identity(&M::identity(2), 1);
        assert!(matches!(a.mul(&c), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn inverse_geometric() {
        // (1 + α)^{-1} = 1 - α + α² - α³
        let a = scalar_series(&[int(1), int(1), int(0), int(0)]);
        assert_eq!(
            a.inverse().unwrap(),
            scalar_series(&[int(1), int(-1), int(1), int(-1)])
        );
        let b = scalar_series(&[int(2), int(1), int(0)]);
        assert!(b.mul(&b.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(scalar_series(&[int(0), int(1)]).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn neg_alpha_flips_odd_terms() {
        let a = scalar_series(&[int(1), int(2), int(3), int(4)]);
        assert_eq!(a.neg_alpha(), scalar_series(&[int(1), int(-2), int(3), int(-4)]));
    }
}
