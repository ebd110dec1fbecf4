//! From a nilpotent pre-Lie algebra to a left brace.
//!
//! Nilpotency is realized by grading: an element is a list of homogeneous
//! components of degree `1..=D`, products add degrees, and everything above
//! `D` is dropped. On such elements the formal flow
//! `W(a) = a + a▷a/2! + a▷(a▷a)/3! + …` is a bijection with inverse `Ω`, and
//! `a ∘ b = a + e^{L_{Ω(a)}}(b)` is a brace multiplication.

use std::fmt::Debug;

use num_traits::One;

use crate::error::{Error, Result};
use crate::free::{FreeElement, Letter};
use crate::operator::Operator;
use crate::rota_baxter::{prelie_left_seq, SiteSequence};
use crate::scalar::{int, Rational};
use crate::series::{series_exp, series_log, AlphaSeries};

/// A vector space with a bilinear pre-Lie product `▷`.
pub trait PreLieAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn max_abs(&self, a: &Self::Elem) -> f64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &-Rational::one()))
    }
}

/// Site sequences with `(A▷B)_n = [Σ_{m<n} A_m, B_n] + A_n B_n`.
#[derive(Clone, Debug)]
pub struct SequencePreLie<O> {
    like: O,
    sites: usize,
}

impl<O: Operator> SequencePreLie<O> {
    pub fn new(like: &O, sites: usize) -> Self {
        Self {
            like: like.zero_like(),
            sites,
        }
    }
}

impl<O: Operator> PreLieAlgebra for SequencePreLie<O> {
    type Elem = SiteSequence<O>;

    fn zero(&self) -> Self::Elem {
        SiteSequence::zeros(&self.like, self.sites)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b).expect("same algebra")
    }
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem {
        a.scale(c)
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        prelie_left_seq(a, b).expect("same algebra")
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn max_abs(&self, a: &Self::Elem) -> f64 {
        a.max_abs()
    }
}

/// An element `a_1 + a_2 + … + a_D` with `a_d` homogeneous of degree `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPreLieElement<E> {
    comps: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> GradedPreLieElement<E> {
    /// `comps[d-1]` is the degree-`d` component.
    pub fn new(comps: Vec<E>) -> Self {
        Self { comps }
    }

    pub fn zero<A: PreLieAlgebra<Elem = E>>(alg: &A, order: usize) -> Self {
        Self {
            comps: vec![alg.zero(); order],
        }
    }

    /// `a` placed in degree `d`.
    pub fn homogeneous<A: PreLieAlgebra<Elem = E>>(alg: &A, a: E, d: usize, order: usize) -> Self {
        let mut out = Self::zero(alg, order);
        if d >= 1 && d <= order {
            out.comps[d - 1] = a;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.comps.len()
    }

    /// Degree-`d` component, `1 ≤ d ≤ D`.
    pub fn component(&self, d: usize) -> &E {
        &self.comps[d - 1]
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }
}

fn check_orders<E>(a: &GradedPreLieElement<E>, b: &GradedPreLieElement<E>) -> Result<()> {
    if a.comps.len() == b.comps.len() {
        Ok(())
    } else {
        Err(Error::OrderMismatch(a.comps.len(), b.comps.len()))
    }
}

pub fn graded_add<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    check_orders(a, b)?;
    Ok(GradedPreLieElement {
        comps: a.comps.iter().zip(&b.comps).map(|(x, y)| alg.add(x, y)).collect(),
    })
}

pub fn graded_sub<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    check_orders(a, b)?;
    Ok(GradedPreLieElement {
        comps: a.comps.iter().zip(&b.comps).map(|(x, y)| alg.sub(x, y)).collect(),
    })
}

pub fn graded_scale<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    c: &Rational,
) -> GradedPreLieElement<A::Elem> {
    GradedPreLieElement {
        comps: a.comps.iter().map(|x| alg.scale(x, c)).collect(),
    }
}

/// Truncated `a ▷ b`: degree `d` collects `a_i ▷ b_j` with `i + j = d`.
pub fn graded_product<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    check_orders(a, b)?;
    let d = a.order();
    let mut comps = vec![alg.zero(); d];
    for i in 1..d {
        if alg.is_zero(&a.comps[i - 1]) {
            continue;
        }
        for j in 1..=d - i {
            if alg.is_zero(&b.comps[j - 1]) {
                continue;
            }
            let p = alg.product(&a.comps[i - 1], &b.comps[j - 1]);
            comps[i + j - 1] = alg.add(&comps[i + j - 1], &p);
        }
    }
    Ok(GradedPreLieElement { comps })
}

/// Lie bracket of the pre-Lie algebra, `[a, b] = a▷b − b▷a`.
pub fn graded_bracket<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    graded_sub(alg, &graded_product(alg, a, b)?, &graded_product(alg, b, a)?)
}

pub fn graded_is_zero<A: PreLieAlgebra>(alg: &A, a: &GradedPreLieElement<A::Elem>) -> bool {
    a.comps.iter().all(|x| alg.is_zero(x))
}

pub fn graded_max_abs<A: PreLieAlgebra>(alg: &A, a: &GradedPreLieElement<A::Elem>) -> f64 {
    a.comps.iter().map(|x| alg.max_abs(x)).fold(0.0, f64::max)
}

/// `e^{L_a}(b) = b + a▷b + a▷(a▷b)/2! + …`.
pub fn exp_left<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    let mut term = b.clone();
    let mut acc = b.clone();
    for k in 1..=a.order() {
        term = graded_scale(alg, &graded_product(alg, a, &term)?, &Rational::new(1.into(), (k as i64).into()));
        acc = graded_add(alg, &acc, &term)?;
    }
    Ok(acc)
}

/// `W(a) = e^{L_a}(𝟏) − 𝟏 = a + a▷a/2! + a▷(a▷a)/3! + …`; the formal
/// unit is never materialized.
pub fn w_map<A: PreLieAlgebra>(alg: &A, a: &GradedPreLieElement<A::Elem>) -> Result<GradedPreLieElement<A::Elem>> {
    let mut term = a.clone();
    let mut acc = a.clone();
    for k in 2..=a.order() {
        term = graded_scale(alg, &graded_product(alg, a, &term)?, &Rational::new(1.into(), (k as i64).into()));
        acc = graded_add(alg, &acc, &term)?;
    }
    Ok(acc)
}

/// Inverse of [`w_map`], solved degree by degree from
/// `Ω = b − (W(Ω) − Ω)`; each pass fixes one more degree.
pub fn omega_map<A: PreLieAlgebra>(alg: &A, b: &GradedPreLieElement<A::Elem>) -> Result<GradedPreLieElement<A::Elem>> {
    let mut omega = b.clone();
    for _ in 1..b.order() {
        let excess = graded_sub(alg, &w_map(alg, &omega)?, &omega)?;
        omega = graded_sub(alg, b, &excess)?;
    }
    Ok(omega)
}

/// `a ∘ b = a + e^{L_{Ω(a)}}(b)`.
pub fn brace_mul<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    graded_add(alg, a, &exp_left(alg, &omega_map(alg, a)?, b)?)
}

/// The homogeneous components of `log(e^{αX} e^{αY})` in the free
/// associative algebra on two letters, through word length `order`.
pub fn bch_words(order: usize) -> Result<Vec<FreeElement>> {
    let x = FreeElement::letter(Letter::new("X", 1, 1));
    let y = FreeElement::letter(Letter::new("Y", 1, 1));
    let ex = series_exp(&AlphaSeries::from_terms(&x, order, [(1, x.clone())]))?;
    let ey = series_exp(&AlphaSeries::from_terms(&y, order, [(1, y.clone())]))?;
    let c = series_log(&ex.mul(&ey)?)?;
    Ok(c.coeffs()[1..].to_vec())
}

/// BCH composition `C(a, b)` in the Lie algebra `[x, y] = x▷y − y▷x`.
///
/// The associative series `log(e^X e^Y)` is computed in the free algebra,
/// each homogeneous piece `P_n` is written as a Lie polynomial with the
/// Dynkin-Specht-Wever map `x_1⋯x_n ↦ [x_1, [x_2, … x_n]] / n`, and the
/// brackets are evaluated in the pre-Lie algebra.
pub fn bch<A: PreLieAlgebra>(
    alg: &A,
    a: &GradedPreLieElement<A::Elem>,
    b: &GradedPreLieElement<A::Elem>,
) -> Result<GradedPreLieElement<A::Elem>> {
    check_orders(a, b)?;
    let mut acc = GradedPreLieElement::zero(alg, a.order());
    for (k, p) in bch_words(a.order())?.iter().enumerate() {
        let n = k + 1;
        for (word, c) in p.terms() {
            let mut letters = word.iter().rev();
            let pick = |l: &Letter| if l.name == "X" { a } else { b };
            let mut v = pick(letters.next().expect("nonempty word")).clone();
            for l in letters {
                v = graded_bracket(alg, pick(l), &v)?;
            }
            acc = graded_add(alg, &acc, &graded_scale(alg, &v, &(c / int(n as i64))))?;
        }
    }
    Ok(acc)
}

/// `Σ_n Ω(αP)_n` for the sequence pre-Lie algebra: the Magnus coefficients
/// of the linear family `1 + αP_n`, read off the brace inverse flow.
pub fn magnus_via_omega<O: Operator>(p: &SiteSequence<O>, order: usize) -> Result<Vec<O>> {
    let alg = SequencePreLie::new(p.like(), p.len());
    let a = GradedPreLieElement::homogeneous(&alg, p.clone(), 1, order);
    Ok(omega_map(&alg, &a)?.components().iter().map(SiteSequence::total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{expand, Direction, SiteOperatorFamily};
    use crate::matrix::Matrix;
    use crate::sample;
    use crate::scalar::rat;

    type M = Matrix<Rational>;

    fn random(alg: &SequencePreLie<M>, seed: u64, order: usize) -> GradedPreLieElement<SiteSequence<M>> {
        let mut rng = sample::rng(seed);
        GradedPreLieElement::new(
            (0..order)
                .map(|_| SiteSequence::from_fn(&M::zeros(2, 2), alg.sites, |_| sample::int_matrix(&mut rng, 2, 2)).unwrap())
                .collect(),
        )
    }

    #[test]
    fn w_and_omega_low_degrees() {
        let alg = SequencePreLie::new(&M::zeros(2, 2), 3);
        let a = random(&alg, 1, 3);
        let a1 = GradedPreLieElement::homogeneous(&alg, a.component(1).clone(), 1, 3);
        let aa = graded_product(&alg, &a1, &a1).unwrap();
        let aaa_r = graded_product(&alg, &a1, &aa).unwrap();
        let aaa_l = graded_product(&alg, &aa, &a1).unwrap();
        let expect_w = [(&a1, rat(1, 1)), (&aa, rat(1, 2)), (&aaa_r, rat(1, 6))]
            .iter()
            .fold(GradedPreLieElement::zero(&alg, 3), |acc, (x, c)| graded_add(&alg, &acc, &graded_scale(&alg, x, c)).unwrap());
        assert_eq!(w_map(&alg, &a1).unwrap(), expect_w);
        let expect_o = [(&a1, rat(1, 1)), (&aa, rat(-1, 2)), (&aaa_l, rat(1, 4)), (&aaa_r, rat(1, 12))]
            .iter()
            .fold(GradedPreLieElement::zero(&alg, 3), |acc, (x, c)| graded_add(&alg, &acc, &graded_scale(&alg, x, c)).unwrap());
        assert_eq!(omega_map(&alg, &a1).unwrap(), expect_o);
    }

    #[test]
    fn round_trips_and_brace_laws() {
        let alg = SequencePreLie::new(&M::zeros(2, 2), 3);
        let (a, b, c) = (random(&alg, 2, 4), random(&alg, 3, 4), random(&alg, 4, 4));
        assert_eq!(omega_map(&alg, &w_map(&alg, &a).unwrap()).unwrap(), a);
        assert_eq!(w_map(&alg, &omega_map(&alg, &a).unwrap()).unwrap(), a);
        let lhs = graded_add(&alg, &brace_mul(&alg, &a, &graded_add(&alg, &b, &c).unwrap()).unwrap(), &a).unwrap();
        let rhs = graded_add(&alg, &brace_mul(&alg, &a, &b).unwrap(), &brace_mul(&alg, &a, &c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let wa = w_map(&alg, &a).unwrap();
        let wb = w_map(&alg, &b).unwrap();
        assert_eq!(brace_mul(&alg, &wa, &wb).unwrap(), w_map(&alg, &bch(&alg, &a, &b).unwrap()).unwrap());
        let zero = GradedPreLieElement::zero(&alg, 4);
        assert_eq!(brace_mul(&alg, &zero, &b).unwrap(), b);
    }

    #[test]
    fn bch_free_low_orders() {
        let w = bch_words(3).unwrap();
        assert_eq!(w[0].to_string(), "X_1 + Y_1");
        assert_eq!(w[1].to_string(), "1/2 X_1 Y_1 - 1/2 Y_1 X_1");
    }

    #[test]
    fn omega_recovers_discrete_magnus() {
        let mut rng = sample::rng(8);
        let p = SiteSequence::from_fn(&M::zeros(2, 2), 4, |_| sample::int_matrix(&mut rng, 2, 3)).unwrap();
        let q = expand(&SiteOperatorFamily::linear(&p, Direction::Forward), 4).q;
        assert_eq!(magnus_via_omega(&p, 4).unwrap(), q);
    }
}
