use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::operator::Operator;
use crate::poly::OpPoly;
use crate::rota_baxter::prelie_integral;
use crate::scalar::{binomial, factorial, rat, Rational};
use crate::series::AlphaSeries;

use super::field::MatrixField;

type M = Matrix<Rational>;
type P = OpPoly<M>;

/// B_n from z/(e^z − 1), so B₁ = −1/2.
pub fn bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|k| binomial(m + 1, k) * &b[k]).sum();
        b.push(-s / Rational::from_integer(((m + 1) as i64).into()));
    }
    b.swap_remove(n)
}

/// Scalar polynomial coefficients `[c0, c1, …]` in x.
type Scalar = Vec<Rational>;

fn integrate_scalar(p: &Scalar, x0: &Rational) -> Scalar {
    let mut out = vec![Rational::zero()];
    out.extend(p.iter().enumerate().map(|(k, c)| c / Rational::from_integer(((k + 1) as i64).into())));
    let at_x0: Rational = out.iter().rev().fold(Rational::zero(), |acc, c| acc * x0 + c);
    out[0] -= at_x0;
    out
}

/// ∫ over x₀ < x₁ < … < x_m < x of x₁^{e₁}⋯x_m^{e_m}, as a polynomial in x.
fn simplex_monomial(exps: &[usize], x0: &Rational) -> Scalar {
    let mut p: Scalar = vec![Rational::one()];
    for &e in exps {
        let mut shifted = vec![Rational::zero(); e];
        shifted.extend(p);
        p = integrate_scalar(&shifted, x0);
    }
    p
}

/// ∫_{x₀<x₁<…<x_m<x} A(x_{w₁})A(x_{w₂})⋯A(x_{w_m}) where `word` lists the
/// (1-based) integration variables in product order.
pub fn ordered_integral(field: &MatrixField, word: &[usize]) -> Result<P> {
    let a = field.as_poly()?;
    let m = word.len();
    if word.iter().any(|&v| v == 0 || v > m) {
        return Err(Error::InvalidArgument("word variables must lie in 1..=len".into()));
    }
    let dim = field.dim();
    let d = a.degree() + 1;
    let mut acc: Vec<M> = Vec::new();
    for t in 0..d.pow(m as u32) {
        // exps[v-1] is the power carried by variable v
        let exps: Vec<usize> = (0..m).map(|v| (t / d.pow(v as u32)) % d).collect();
        let mut prod = M::identity(dim);
        for &v in word {
            prod = prod.mul(&a.coeff(exps[v - 1]));
        }
        if prod.is_zero() {
            continue;
        }
        for (j, c) in simplex_monomial(&exps, field.x0()).into_iter().enumerate() {
            if acc.len() <= j {
                acc.resize(j + 1, M::zeros(dim, dim));
            }
            acc[j] = acc[j].add(&prod.scale(&c));
        }
    }
    if acc.is_empty() {
        acc.push(M::zeros(dim, dim));
    }
    Ok(OpPoly::from_coeffs(acc))
}

/// Q^{(1..=order)}(x) in the commutator-integral and pre-Lie forms.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousMagnus {
    pub explicit: Vec<P>,
    pub prelie: Vec<P>,
}

impl ContinuousMagnus {
    pub fn agree(&self) -> bool {
        self.explicit == self.prelie
    }
}

pub fn magnus_continuous(field: &MatrixField, order: usize) -> Result<ContinuousMagnus> {
    if order > 3 {
        return Err(Error::Unsupported(format!("closed continuous forms stop at order 3, asked for {order}")));
    }
    let a = field.as_poly()?;
    let x0 = field.x0();

    let mut explicit = Vec::new();
    if order >= 1 {
        explicit.push(ordered_integral(field, &[1])?);
    }
    if order >= 2 {
        // ½∫∫ [A(x₂), A(x₁)]
        let q2 = ordered_integral(field, &[2, 1])?.sub(&ordered_integral(field, &[1, 2])?);
        explicit.push(q2.scale(&rat(1, 2)));
    }
    if order >= 3 {
        // [A₃,[A₂,A₁]] + [[A₃,A₂],A₁]
        let words: [(&[usize], i64); 6] = [
            (&[3, 2, 1], 2),
            (&[1, 2, 3], 2),
            (&[3, 1, 2], -1),
            (&[2, 1, 3], -1),
            (&[2, 3, 1], -1),
            (&[1, 3, 2], -1),
        ];
        let mut q3 = a.zero_like();
        for (w, c) in words {
            q3 = q3.add(&ordered_integral(field, w)?.scale(&Rational::from_integer(c.into())));
        }
        explicit.push(q3.scale(&rat(1, 6)));
    }

    let pl = |x: &P, y: &P| prelie_integral(x, y, x0);
    let mut prelie = Vec::new();
    if order >= 1 {
        prelie.push(a.integrate_from(x0));
    }
    if order >= 2 {
        prelie.push(pl(a, a).integrate_from(x0).scale(&rat(-1, 2)));
    }
    if order >= 3 {
        let aa = pl(a, a);
        let inner = pl(&aa, a).scale(&rat(1, 4)).add(&pl(a, &aa).scale(&rat(1, 12)));
        prelie.push(inner.integrate_from(x0));
    }
    Ok(ContinuousMagnus { explicit, prelie })
}

/// Q(x) = ∫_{x₀}^x Σ_n (B_n/n!) ad^n_{Q(s)} A(s) ds, solved by fixed-point
/// iteration in the α-grading. Each sweep fixes one more order, so `depth`
/// must reach `order`.
pub fn magnus_bernoulli_iterate(field: &MatrixField, depth: usize, order: usize) -> Result<Vec<P>> {
    if depth < order {
        return Err(Error::MissingOrder {
            needed: order,
            available: depth,
        });
    }
    let a = field.as_poly()?;
    let x0 = field.x0();
    let zero = a.zero_like();
    let source = AlphaSeries::from_terms(&zero, order, [(1, a.clone())]);
    let mut q = AlphaSeries::zero(&zero, order);
    for _ in 0..depth {
        let mut term = source.clone();
        let mut rhs = source.clone();
        for n in 1..order {
            term = q.mul(&term)?.sub(&term.mul(&q)?)?;
            let c = bernoulli(n) / factorial(n);
            if !c.is_zero() {
                rhs = rhs.add(&term.scale(&c))?;
            }
        }
        q = rhs.map(|p| p.integrate_from(x0));
    }
    Ok(q.coeffs()[1..].to_vec())
}

/// T^{(1..=order)}(x) as iterated integrals and as nested dendriform
/// products (A ≺ B)(x) = A(x)∫_{x₀}^x B.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousDyson {
    pub iterated: Vec<P>,
    pub dendriform: Vec<P>,
}

pub fn continuous_dyson(field: &MatrixField, order: usize) -> Result<ContinuousDyson> {
    let a = field.as_poly()?;
    let x0 = field.x0();
    let mut iterated = Vec::new();
    let mut dendriform = Vec::new();
    let mut nested = a.clone();
    for m in 1..=order {
        let word: Vec<usize> = (1..=m).rev().collect();
        iterated.push(ordered_integral(field, &word)?);
        dendriform.push(nested.integrate_from(x0));
        nested = a.mul(&nested.integrate_from(x0));
    }
    Ok(ContinuousDyson { iterated, dendriform })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::commutator;
    use crate::scalar::int;

    fn xy() -> (M, M) {
        (
            M::from_rows(vec![vec![int(1), int(2)], vec![int(-1), int(0)]]),
            M::from_rows(vec![vec![int(0), int(1)], vec![int(3), int(-2)]]),
        )
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
    }

    #[test]
    fn linear_field_second_order() {
        let (x, y) = xy();
        let field = MatrixField::linear(x.clone(), y.clone(), int(1)).unwrap();
        let expect = OpPoly::monomial(commutator(&x, &y).scale(&rat(-1, 12)), 3);
        let m = magnus_continuous(&field, 3).unwrap();
        assert!(m.agree());
        assert_eq!(m.explicit[0], OpPoly::from_coeffs(vec![M::zeros(2, 2), x.clone(), y.scale(&rat(1, 2))]));
        assert_eq!(m.explicit[1], expect);
        let it = magnus_bernoulli_iterate(&field, 3, 3).unwrap();
        assert_eq!(it, m.explicit);
        assert_eq!(magnus_bernoulli_iterate(&field, 1, 1).unwrap()[0], m.explicit[0]);
        assert!(magnus_bernoulli_iterate(&field, 2, 3).is_err());
    }

    #[test]
    fn commuting_field_has_no_higher_terms() {
        let x = M::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(-1)]]);
        let field = MatrixField::polynomial(OpPoly::from_coeffs(vec![x.clone(), x.scale(&int(3)), x]), int(0), int(2)).unwrap();
        let m = magnus_continuous(&field, 3).unwrap();
        assert!(m.explicit[1].is_zero() && m.explicit[2].is_zero());
        assert!(m.agree());
    }

    #[test]
    fn nonzero_start_and_quadratic_field() {
        let (x, y) = xy();
        let z = M::from_rows(vec![vec![int(1), int(-1)], vec![int(2), int(1)]]);
        let field = MatrixField::polynomial(OpPoly::from_coeffs(vec![x, y, z]), rat(1, 3), int(2)).unwrap();
        let m = magnus_continuous(&field, 3).unwrap();
        assert!(m.agree());
        assert_eq!(magnus_bernoulli_iterate(&field, 4, 3).unwrap(), m.explicit);
        let d = continuous_dyson(&field, 3).unwrap();
        assert_eq!(d.iterated, d.dendriform);
        // Q = log T order by order
        let t = &d.iterated;
        let q2 = t[1].sub(&t[0].mul(&t[0]).scale(&rat(1, 2)));
        assert_eq!(q2, m.explicit[1]);
        let q3 = t[2]
            .sub(&t[0].mul(&t[1]).add(&t[1].mul(&t[0])).scale(&rat(1, 2)))
            .add(&t[0].mul(&t[0]).mul(&t[0]).scale(&rat(1, 3)));
        assert_eq!(q3, m.explicit[2]);
    }
}
