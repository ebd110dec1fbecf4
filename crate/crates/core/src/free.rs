//! Free noncommutative algebra over the rationals, generated by
//! site-indexed letters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::operator::{Operator, Shape};
use crate::scalar::Rational;

/// A generator: a name, a 1-based site, and the power of α it carries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub name: String,
    pub site: usize,
    pub degree: usize,
}

impl Letter {
    pub fn new(name: impl Into<String>, site: usize, degree: usize) -> Self {
        Self {
            name: name.into(),
            site,
            degree,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.name, self.site)
    }
}

pub type Word = Vec<Letter>;

pub fn word_degree(w: &[Letter]) -> usize {
    w.iter().map(|l| l.degree).sum()
}

/// A finite rational combination of words. Zero coefficients are never
/// stored, so structural equality is algebraic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Rational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(vec![l], Rational::one())
    }

    pub fn monomial(word: Word, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[Letter]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&[])
    }

    fn accumulate(&mut self, w: Word, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// The part of total α-degree exactly `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(w) == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest α-degree of any stored word; `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| word_degree(w)).max()
    }

    /// Substitute each letter by an operator, keeping word order.
    pub fn evaluate<O: Operator>(&self, like: &O, f: impl Fn(&Letter) -> O) -> O {
        self.terms.iter().fold(like.zero_like(), |acc, (w, c)| {
            let prod = w.iter().fold(like.identity_like(), |p, l| p.mul(&f(l)));
            acc.add(&prod.scale(c))
        })
    }
}

impl Operator for FreeElement {
    fn shape(&self) -> Shape {
        Shape::Free
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn identity_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.accumulate(w.clone(), c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.accumulate(w.clone(), -c);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                out.accumulate(w, a * b);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
    // Only nonzero constants are units of the free algebra.
    fn try_inverse(&self) -> Option<Self> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && w.is_empty() => {
                Some(Self::constant(c.recip()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // print by increasing degree, then word order
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(w, _)| word_degree(w));
        for (k, (w, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag} {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn x(site: usize) -> FreeElement {
        FreeElement::letter(Letter::new("P", site, 1))
    }

    #[test]
    fn products_keep_order() {
        let p = x(2).mul(&x(1));
        assert_eq!(p.to_string(), "P_2 P_1");
        assert_ne!(p, x(1).mul(&x(2)));
    }

    #[test]
    fn cancellation_prunes() {
        let a = x(1).add(&x(2));
        let z = a.sub(&x(2)).sub(&x(1));
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
        assert!(x(1).scale(&int(0)).is_empty());
    }

    #[test]
    fn display_signs() {
        let e = FreeElement::one()
            .sub(&x(1).scale(&rat(1, 2)))
            .add(&x(2).mul(&x(1)));
        assert_eq!(e.to_string(), "1 - 1/2 P_1 + P_2 P_1");
        assert_eq!(FreeElement::zero().to_string(), "0");
    }

    #[test]
    fn degrees() {
        let l2 = FreeElement::letter(Letter::new("P2", 1, 2));
        let w = l2.mul(&x(3));
        assert_eq!(w.max_degree(), Some(3));
        assert_eq!(w.homogeneous(3), w);
        assert!(w.homogeneous(2).is_zero());
    }

    #[test]
    fn only_constants_invert() {
        assert_eq!(
            FreeElement::constant(int(4)).try_inverse(),
            Some(FreeElement::constant(rat(1, 4)))
        );
        assert!(x(1).try_inverse().is_none());
        assert!(FreeElement::one().add(&x(1)).try_inverse().is_none());
    }
}
