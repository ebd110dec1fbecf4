//! Rota-Baxter operators and the tridendriform and pre-Lie actions they
//! induce.
//!
//! Two instances are provided: the weight-1 partial sum on site sequences,
//! `Σ(f)_n = f_1 + … + f_{n-1}`, and the weight-0 integral `∫_{x0}^x` on
//! operator-valued polynomials. From a weight-θ operator `R`:
//!
//! ```text
//! x ≻ y = R(x) y      x ≺ y = x R(y)      x · y = θ x y
//! x ▷ y = [R(x), y] + θ x y               x ◁ y = [x, R(y)] + θ x y
//! ```

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operator::{commutator, ensure_compatible, Operator};
use crate::poly::OpPoly;
use crate::scalar::{int, Rational};

/// Operators `x_1, …, x_N` indexed from 1, all in one backend.
#[derive(Clone, PartialEq, Debug)]
pub struct SiteSequence<O> {
    like: O,
    values: Vec<O>,
}

impl<O: Operator> SiteSequence<O> {
    /// `like` fixes the backend of the (possibly empty) sequence.
    pub fn new(like: &O, values: Vec<O>) -> Result<Self> {
        for v in &values {
            ensure_compatible(like, v)?;
        }
        Ok(Self {
            like: like.zero_like(),
            values,
        })
    }

    pub fn zeros(like: &O, sites: usize) -> Self {
        Self {
            like: like.zero_like(),
            values: vec![like.zero_like(); sites],
        }
    }

    pub fn from_fn(like: &O, sites: usize, f: impl FnMut(usize) -> O) -> Result<Self> {
        Self::new(like, (1..=sites).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn like(&self) -> &O {
        &self.like
    }

    pub fn values(&self) -> &[O] {
        &self.values
    }

    /// 1-based access.
    pub fn get(&self, n: usize) -> Result<&O> {
        self.check_site(n)?;
        Ok(&self.values[n - 1])
    }

    fn check_site(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.values.len() {
            Err(Error::SiteOutOfRange {
                site: n,
                sites: self.values.len(),
            })
        } else {
            Ok(())
        }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.len() != rhs.len() {
            return Err(Error::InvalidArgument(format!(
                "sequence lengths differ: {} vs {}",
                self.len(),
                rhs.len()
            )));
        }
        ensure_compatible(&self.like, &rhs.like)
    }

    pub fn map(&self, f: impl Fn(&O) -> O) -> Self {
        Self {
            like: self.like.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Sitewise combination; fails on length or backend mismatch.
    pub fn zip(&self, rhs: &Self, f: impl Fn(&O, &O) -> O) -> Result<Self> {
        self.check(rhs)?;
        Ok(Self {
            like: self.like.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, O::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, O::sub)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// `x_1 + … + x_N`.
    pub fn total(&self) -> O {
        self.values.iter().fold(self.like.clone(), |acc, x| acc.add(x))
    }

    /// The image under the partial sum: `(Σ(x)_1, …, Σ(x)_N)`.
    pub fn partial_sums(&self) -> Self {
        let mut acc = self.like.clone();
        let values = self
            .values
            .iter()
            .map(|x| {
                let before = acc.clone();
                acc = acc.add(x);
                before
            })
            .collect();
        Self {
            like: self.like.clone(),
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(O::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(O::max_abs).fold(0.0, f64::max)
    }
}

/// `Σ(f)_n = Σ_{m<n} f_m`; zero at `n = 1`.
pub fn partial_sum<O: Operator>(f: &SiteSequence<O>, n: usize) -> Result<O> {
    f.check_site(n)?;
    Ok(f.values[..n - 1].iter().fold(f.like.clone(), |acc, x| acc.add(x)))
}

/// The two Rota-Baxter operators used throughout.
#[derive(Debug, Clone, PartialEq)]
pub enum RotaBaxterOp {
    /// Weight 1, on site sequences.
    PartialSum,
    /// Weight 0, `f ↦ ∫_{x0}^x f`, on operator-valued polynomials.
    RiemannIntegral { x0: Rational },
}

impl RotaBaxterOp {
    pub fn weight(&self) -> Rational {
        match self {
            RotaBaxterOp::PartialSum => Rational::one(),
            RotaBaxterOp::RiemannIntegral { .. } => Rational::zero(),
        }
    }

    pub fn apply<O: Operator>(&self, a: &RbOperand<O>) -> Result<RbOperand<O>> {
        match (self, a) {
            (RotaBaxterOp::PartialSum, RbOperand::Sites(s)) => Ok(RbOperand::Sites(s.partial_sums())),
            (RotaBaxterOp::RiemannIntegral { x0 }, RbOperand::Poly(p)) => {
                Ok(RbOperand::Poly(p.integrate_from(x0)))
            }
            _ => Err(Error::KindMismatch),
        }
    }
}

/// An element of the algebra a [`RotaBaxterOp`] acts on.
#[derive(Clone, PartialEq, Debug)]
pub enum RbOperand<O> {
    Sites(SiteSequence<O>),
    Poly(OpPoly<O>),
}

impl<O: Operator> RbOperand<O> {
    fn combine(&self, rhs: &Self, sites: impl Fn(&O, &O) -> O, poly: impl Fn(&OpPoly<O>, &OpPoly<O>) -> OpPoly<O>) -> Result<Self> {
        match (self, rhs) {
            (RbOperand::Sites(a), RbOperand::Sites(b)) => Ok(RbOperand::Sites(a.zip(b, sites)?)),
            (RbOperand::Poly(a), RbOperand::Poly(b)) => {
                ensure_compatible(a, b)?;
                Ok(RbOperand::Poly(poly(a, b)))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, O::add, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, O::sub, |a, b| a.sub(b))
    }

    /// Pointwise product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, O::mul, |a, b| a.mul(b))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            RbOperand::Sites(s) => RbOperand::Sites(s.scale(c)),
            RbOperand::Poly(p) => RbOperand::Poly(p.scale(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RbOperand::Sites(s) => s.is_zero(),
            RbOperand::Poly(p) => p.is_zero(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            RbOperand::Sites(s) => s.max_abs(),
            RbOperand::Poly(p) => p.max_abs(),
        }
    }
}

/// `R(a)R(b) − R(R(a)b + aR(b) + θab)`.
pub fn rb_residual<O: Operator>(r: &RotaBaxterOp, a: &RbOperand<O>, b: &RbOperand<O>) -> Result<RbOperand<O>> {
    let (ra, rb) = (r.apply(a)?, r.apply(b)?);
    let inner = ra
        .mul(b)?
        .add(&a.mul(&rb)?)?
        .add(&a.mul(b)?.scale(&r.weight()))?;
    ra.mul(&rb)?.sub(&r.apply(&inner)?)
}

/// The three tridendriform operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trid {
    /// `≺`
    Prec,
    /// `≻`
    Succ,
    /// `·`
    Dot,
}

/// One site of a tridendriform product for the weight-1 partial sum.
pub fn trid_apply<O: Operator>(kind: Trid, a: &SiteSequence<O>, b: &SiteSequence<O>, n: usize) -> Result<O> {
    a.check(b)?;
    let (an, bn) = (a.get(n)?, b.get(n)?);
    Ok(match kind {
        Trid::Prec => an.mul(&partial_sum(b, n)?),
        Trid::Succ => partial_sum(a, n)?.mul(bn),
        Trid::Dot => an.mul(bn),
    })
}

/// Whole-sequence `a ≺ b`.
pub fn prec<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    a.zip(&b.partial_sums(), O::mul)
}

/// Whole-sequence `a ≻ b`.
pub fn succ<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    a.partial_sums().zip(b, O::mul)
}

/// Whole-sequence `a · b` (weight 1).
pub fn dot<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    a.zip(b, O::mul)
}

/// The associative product `a ∗ b = a≺b + a≻b + a·b`.
pub fn star<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    prec(a, b)?.add(&succ(a, b)?)?.add(&dot(a, b)?)
}

/// `(A▷B)_n = [Σ(A)_n, B_n] + A_n B_n`.
pub fn prelie_left<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>, n: usize) -> Result<O> {
    a.check(b)?;
    let (an, bn) = (a.get(n)?, b.get(n)?);
    Ok(commutator(&partial_sum(a, n)?, bn).add(&an.mul(bn)))
}

/// `(A◁B)_n = [A_n, Σ(B)_n] + A_n B_n`.
pub fn prelie_right<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>, n: usize) -> Result<O> {
    a.check(b)?;
    let (an, bn) = (a.get(n)?, b.get(n)?);
    Ok(commutator(an, &partial_sum(b, n)?).add(&an.mul(bn)))
}

/// Whole-sequence `a ▷ b`.
pub fn prelie_left_seq<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    let sa = a.partial_sums();
    let comm = sa.zip(b, commutator)?;
    comm.add(&a.zip(b, O::mul)?)
}

/// Whole-sequence `a ◁ b`.
pub fn prelie_right_seq<O: Operator>(a: &SiteSequence<O>, b: &SiteSequence<O>) -> Result<SiteSequence<O>> {
    let sb = b.partial_sums();
    let comm = a.zip(&sb, commutator)?;
    comm.add(&a.zip(b, O::mul)?)
}

/// A named sitewise defect.
#[derive(Clone, Debug)]
pub struct Residual<O> {
    pub label: &'static str,
    pub values: SiteSequence<O>,
}

impl<O: Operator> Residual<O> {
    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.max_abs()
    }
}

#[derive(Clone, Debug)]
pub struct TridReport<O> {
    /// The seven tridendriform axioms, in the usual order.
    pub axioms: Vec<Residual<O>>,
    pub star_associativity: Residual<O>,
    /// `(a≺b)≻c − a≻(b≺c)`: a frequently misprinted form of the second
    /// axiom. It does not hold for Rota-Baxter actions and is reported for
    /// information only.
    pub misprinted_second_axiom: Residual<O>,
}

impl<O: Operator> TridReport<O> {
    /// All seven axioms and associativity of `∗` vanish.
    pub fn all_zero(&self) -> bool {
        self.axioms.iter().all(Residual::is_zero) && self.star_associativity.is_zero()
    }

    pub fn max_defect(&self) -> f64 {
        self.axioms
            .iter()
            .chain(std::iter::once(&self.star_associativity))
            .map(Residual::max_abs)
            .fold(0.0, f64::max)
    }
}

/// Evaluate the tridendriform axioms for the partial-sum actions.
pub fn check_tridendriform<O: Operator>(
    a: &SiteSequence<O>,
    b: &SiteSequence<O>,
    c: &SiteSequence<O>,
) -> Result<TridReport<O>> {
    a.check(b)?;
    a.check(c)?;
    let diff = |label, l: SiteSequence<O>, r: SiteSequence<O>| -> Result<Residual<O>> {
        Ok(Residual {
            label,
            values: l.sub(&r)?,
        })
    };
    let axioms = vec![
        diff("(a≺b)≺c = a≺(b∗c)", prec(&prec(a, b)?, c)?, prec(a, &star(b, c)?)?)?,
        diff("(a≻b)≺c = a≻(b≺c)", prec(&succ(a, b)?, c)?, succ(a, &prec(b, c)?)?)?,
        diff("a≻(b≻c) = (a∗b)≻c", succ(a, &succ(b, c)?)?, succ(&star(a, b)?, c)?)?,
        diff("a·(b·c) = (a·b)·c", dot(a, &dot(b, c)?)?, dot(&dot(a, b)?, c)?)?,
        diff("(a≻b)·c = a≻(b·c)", dot(&succ(a, b)?, c)?, succ(a, &dot(b, c)?)?)?,
        diff("(a≺b)·c = a·(b≻c)", dot(&prec(a, b)?, c)?, dot(a, &succ(b, c)?)?)?,
        diff("(a·b)≺c = a·(b≺c)", prec(&dot(a, b)?, c)?, dot(a, &prec(b, c)?)?)?,
    ];
    Ok(TridReport {
        axioms,
        star_associativity: diff("(a∗b)∗c = a∗(b∗c)", star(&star(a, b)?, c)?, star(a, &star(b, c)?)?)?,
        misprinted_second_axiom: diff("(a≺b)≻c = a≻(b≺c)", succ(&prec(a, b)?, c)?, succ(a, &prec(b, c)?)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreLieKind {
    /// `▷`, identity symmetric in the first two arguments.
    Left,
    /// `◁`, identity symmetric in the last two arguments.
    Right,
}

/// Sitewise pre-Lie defect.
///
/// Left: `(a▷b)▷c − a▷(b▷c) − (b▷a)▷c + b▷(a▷c)`.
/// Right: `(a◁b)◁c − a◁(b◁c) − (a◁c)◁b + a◁(c◁b)`.
pub fn check_prelie<O: Operator>(
    kind: PreLieKind,
    a: &SiteSequence<O>,
    b: &SiteSequence<O>,
    c: &SiteSequence<O>,
) -> Result<SiteSequence<O>> {
    match kind {
        PreLieKind::Left => {
            let p = prelie_left_seq;
            p(&p(a, b)?, c)?
                .sub(&p(a, &p(b, c)?)?)?
                .sub(&p(&p(b, a)?, c)?)?
                .add(&p(b, &p(a, c)?)?)
        }
        PreLieKind::Right => {
            let p = prelie_right_seq;
            p(&p(a, b)?, c)?
                .sub(&p(a, &p(b, c)?)?)?
                .sub(&p(&p(a, c)?, b)?)?
                .add(&p(a, &p(c, b)?)?)
        }
    }
}

/// Continuous pre-Lie product `(A▷B)(x) = [∫_{x0}^x A, B(x)]`.
pub fn prelie_integral<O: Operator>(a: &OpPoly<O>, b: &OpPoly<O>, x0: &Rational) -> OpPoly<O> {
    commutator(&a.integrate_from(x0), b)
}

/// Scalar helper: the sequence `(c, c, …, c)` of identity multiples.
pub fn constant_sequence<O: Operator>(like: &O, sites: usize, c: i64) -> SiteSequence<O> {
    let v = like.identity_like().scale(&int(c));
    SiteSequence {
        like: like.zero_like(),
        values: vec![v; sites],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{FreeElement, Letter};
    use crate::matrix::Matrix;
    use crate::sample;

    type M = Matrix<Rational>;

    fn ones(n: usize) -> SiteSequence<M> {
        constant_sequence(&M::identity(1), n, 1)
    }

    fn letters(name: &str, n: usize) -> SiteSequence<FreeElement> {
        SiteSequence::from_fn(&FreeElement::zero(), n, |k| FreeElement::letter(Letter::new(name, k, 1))).unwrap()
    }

    fn random_seq(seed: u64, n: usize) -> SiteSequence<M> {
        let mut rng = sample::rng(seed);
        SiteSequence::from_fn(&M::zeros(2, 2), n, |_| sample::rational_matrix(&mut rng, 2, 4)).unwrap()
    }

    #[test]
    fn partial_sums_of_ones() {
        let f = ones(4);
        assert_eq!(partial_sum(&f, 4).unwrap(), M::scalar(1, int(3)));
        assert!(partial_sum(&f, 1).unwrap().is_zero());
        assert!(matches!(partial_sum(&f, 5), Err(Error::SiteOutOfRange { site: 5, sites: 4 })));
    }

    #[test]
    fn rb_identity_partial_sum_and_integral() {
        let r = RotaBaxterOp::PartialSum;
        let f = RbOperand::Sites(ones(6));
        assert!(rb_residual(&r, &f, &f).unwrap().is_zero());
        let (a, b) = (RbOperand::Sites(random_seq(1, 5)), RbOperand::Sites(random_seq(2, 5)));
        assert!(rb_residual(&r, &a, &b).unwrap().is_zero());

        let s = RotaBaxterOp::RiemannIntegral { x0: int(0) };
        let one = RbOperand::Poly(OpPoly::constant(M::identity(1)));
        let x = RbOperand::Poly(OpPoly::monomial(M::identity(1), 1));
        assert!(rb_residual(&s, &one, &x).unwrap().is_zero());
        assert_eq!(rb_residual(&s, &one, &f), Err(Error::KindMismatch));
    }

    #[test]
    fn trid_on_ones_and_letters() {
        let f = ones(4);
        for n in 1..=4 {
            assert_eq!(trid_apply(Trid::Prec, &f, &f, n).unwrap(), M::scalar(1, int(n as i64 - 1)));
        }
        let (x, y) = (letters("x", 3), letters("y", 3));
        let p = trid_apply(Trid::Prec, &x, &y, 3).unwrap();
        assert_eq!(p.to_string(), "x_3 y_1 + x_3 y_2");
    }

    #[test]
    fn prelie_scalar_values() {
        let f = ones(3);
        for n in 1..=3 {
            assert_eq!(prelie_left(&f, &f, n).unwrap(), M::identity(1));
            assert_eq!(prelie_right(&f, &f, n).unwrap(), M::identity(1));
        }
    }

    #[test]
    fn prelie_matches_trid_combination() {
        let (a, b) = (random_seq(3, 4), random_seq(4, 4));
        let via_trid = succ(&a, &b).unwrap().sub(&prec(&b, &a).unwrap()).unwrap().add(&dot(&a, &b).unwrap()).unwrap();
        assert_eq!(prelie_left_seq(&a, &b).unwrap(), via_trid);
        let via_trid = prec(&a, &b).unwrap().sub(&succ(&b, &a).unwrap()).unwrap().add(&dot(&a, &b).unwrap()).unwrap();
        assert_eq!(prelie_right_seq(&a, &b).unwrap(), via_trid);
    }

    #[test]
    fn axioms_hold_and_misprint_does_not() {
        let (a, b, c) = (random_seq(5, 4), random_seq(6, 4), random_seq(7, 4));
        let rep = check_tridendriform(&a, &b, &c).unwrap();
        assert!(rep.all_zero(), "max defect {}", rep.max_defect());
        assert!(!rep.misprinted_second_axiom.is_zero());
        for kind in [PreLieKind::Left, PreLieKind::Right] {
            assert!(check_prelie(kind, &a, &b, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn free_backend_prelie() {
        let (a, b, c) = (letters("a", 3), letters("b", 3), letters("c", 3));
        assert!(check_prelie(PreLieKind::Left, &a, &b, &c).unwrap().is_zero());
        assert!(check_prelie(PreLieKind::Right, &a, &b, &c).unwrap().is_zero());
        assert!(check_tridendriform(&a, &b, &c).unwrap().all_zero());
    }
}
