use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{kron_embed, kron_embed_dims, permutation_op, Matrix};
use crate::operator::{commutator, Operator};
use crate::scalar::{int, Rational};

use super::lax::LaxRep;
use super::matrix_poly::MatrixPoly;

type M = Matrix<Rational>;

/// R(λ₁, λ₂) = (λ₁ − λ₂)·1 + 𝒫 in two spectral parameters.
pub fn yangian_r(n: usize) -> MatrixPoly {
    let id = M::identity(n * n);
    MatrixPoly::monomial(id.clone(), (1, 0), 2)
        .sub(&MatrixPoly::monomial(id, (0, 1), 2))
        .and_then(|p| p.add(&MatrixPoly::constant(permutation_op(n), 2)))
        .expect("same shape")
}

/// R(u) = u·1 + 𝒫 in the difference variable.
pub fn yangian_r_difference(n: usize) -> MatrixPoly {
    MatrixPoly::monomial(M::identity(n * n), (1, 0), 1)
        .add(&MatrixPoly::constant(permutation_op(n), 1))
        .expect("same shape")
}

/// The classical r-matrix r(u) = 𝒫/u.
pub fn classical_r(n: usize) -> MatrixPoly {
    MatrixPoly::monomial(permutation_op(n), (-1, 0), 1)
}

fn local_dim(r: &MatrixPoly) -> Result<usize> {
    let d = r.dim();
    let n = (1..=d).find(|n| n * n >= d).unwrap_or(0);
    if n * n != d || n < 2 {
        return Err(Error::InvalidArgument(format!("R-matrix dimension {d} is not a square 𝒩² with 𝒩 ≥ 2")));
    }
    Ok(n)
}

/// R evaluated for the ordered pair of spectral parameters; one-variable
/// matrices are read as functions of the difference.
fn eval_pair(r: &MatrixPoly, a: &Rational, b: &Rational) -> Result<M> {
    match r.nvars() {
        1 => r.eval(&[a - b]),
        _ => r.eval(&[a.clone(), b.clone()]),
    }
}

/// R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂ on the threefold tensor power.
pub fn ybe_residual(r: &MatrixPoly, l1: &Rational, l2: &Rational, l3: &Rational) -> Result<M> {
    let n = local_dim(r)?;
    let r12 = kron_embed(&eval_pair(r, l1, l2)?, &[0, 1], 3, n)?;
    let r13 = kron_embed(&eval_pair(r, l1, l3)?, &[0, 2], 3, n)?;
    let r23 = kron_embed(&eval_pair(r, l2, l3)?, &[1, 2], 3, n)?;
    Ok(r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)))
}

/// [r₁₂, r₁₃] + [r₁₂ + r₁₃, r₂₃].
pub fn classical_ybe_residual(r: &MatrixPoly, l1: &Rational, l2: &Rational, l3: &Rational) -> Result<M> {
    let n = local_dim(r)?;
    let r12 = kron_embed(&eval_pair(r, l1, l2)?, &[0, 1], 3, n)?;
    let r13 = kron_embed(&eval_pair(r, l1, l3)?, &[0, 2], 3, n)?;
    let r23 = kron_embed(&eval_pair(r, l2, l3)?, &[1, 2], 3, n)?;
    Ok(commutator(&r12, &r13).add(&commutator(&r12.add(&r13), &r23)))
}

/// Outcome of an RTT check over a sample grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RttReport {
    /// Per-variable degree of the residual once denominators are cleared.
    pub degree_bounds: (usize, usize),
    pub pairs: usize,
    pub max_defect: f64,
}

impl RttReport {
    pub fn is_zero(&self) -> bool {
        self.max_defect == 0.0
    }
}

/// R₁₂(λ₁,λ₂)𝕃₁(λ₁)𝕃₂(λ₂) − 𝕃₂(λ₂)𝕃₁(λ₁)R₁₂(λ₁,λ₂) on every pair of the
/// grid `samples × samples`.
///
/// After multiplying by λ₁^M λ₂^M (M the lax degree) the residual is a
/// polynomial whose degree in each variable is bounded; vanishing on a grid
/// with more points than that bound proves it vanishes identically. Too
/// small a grid is an error rather than a weaker check.
pub fn rtt_residual(r: &MatrixPoly, lax: &LaxRep, samples: &[Rational]) -> Result<RttReport> {
    let n = local_dim(r)?;
    if n != lax.aux_dim() {
        return Err(Error::InvalidArgument(format!("R acts on 𝒩 = {n}, lax has 𝒩 = {}", lax.aux_dim())));
    }
    let bound = |k: usize| -> Result<usize> {
        let (lo, hi) = if r.nvars() == 1 { r.exponent_range(0) } else { r.exponent_range(k) };
        if lo < 0 {
            return Err(Error::Unsupported("R-matrix with negative powers of the spectral parameter".into()));
        }
        Ok(hi as usize + lax.degree())
    };
    let degree_bounds = (bound(0)?, bound(1)?);
    let needed = degree_bounds.0.max(degree_bounds.1) + 1;
    let distinct: BTreeSet<&Rational> = samples.iter().collect();
    if distinct.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: distinct.len(),
        });
    }
    if distinct.iter().any(|s| s.is_zero()) && lax.degree() > 0 {
        return Err(Error::SingularPoint);
    }

    let (a, q) = (lax.aux_dim(), lax.quantum_dim());
    let dims = [a, a, q];
    let poly = lax.as_poly();
    let mut lax1 = Vec::new();
    let mut lax2 = Vec::new();
    for s in &distinct {
        let l = poly.eval(&[(*s).clone()])?;
        lax1.push(kron_embed_dims(&l, &[0, 2], &dims)?);
        lax2.push(kron_embed_dims(&l, &[1, 2], &dims)?);
    }
    let power = lax.degree() as i32;
    let mut max_defect: f64 = 0.0;
    for (i, s1) in distinct.iter().enumerate() {
        for (j, s2) in distinct.iter().enumerate() {
            let r12 = kron_embed_dims(&eval_pair(r, s1, s2)?, &[0, 1], &dims)?;
            let res = r12.mul(&lax1[i]).mul(&lax2[j]).sub(&lax2[j].mul(&lax1[i]).mul(&r12));
            let clear: Rational = num_traits::pow::Pow::pow(*s1 * *s2, power);
            max_defect = max_defect.max(res.scale(&clear).max_abs());
        }
    }
    Ok(RttReport {
        degree_bounds,
        pairs: distinct.len() * distinct.len(),
        max_defect,
    })
}

/// RTT for a lax known only through degree M, compared coefficientwise in
/// α₁ = 1/λ₁, α₂ = 1/λ₂.
///
/// With R scaled to α₁α₂R = (α₂ − α₁)·1 + α₁α₂𝒫, every coefficient of
/// α₁^a α₂^b with a, b ≤ M involves only stored lax coefficients, so those
/// are exactly the coefficients that must vanish.
pub fn rtt_truncated_residual(lax: &LaxRep) -> Result<f64> {
    let (a, q) = (lax.aux_dim(), lax.quantum_dim());
    let dims = [a, a, q];
    let d = a * a * q;
    let embed = |m: &M, slots: &[usize]| kron_embed_dims(m, slots, &dims);
    let mut l1 = MatrixPoly::zero(2, d);
    let mut l2 = MatrixPoly::zero(2, d);
    for m in 0..=lax.degree() {
        l1 = l1.add(&MatrixPoly::monomial(embed(&lax.coeff(m), &[0, 2])?, (m as i32, 0), 2))?;
        l2 = l2.add(&MatrixPoly::monomial(embed(&lax.coeff(m), &[1, 2])?, (0, m as i32), 2))?;
    }
    let id = M::identity(d);
    let r = MatrixPoly::monomial(id.clone(), (0, 1), 2)
        .sub(&MatrixPoly::monomial(id, (1, 0), 2))?
        .add(&MatrixPoly::monomial(embed(&permutation_op(a), &[0, 1])?, (1, 1), 2))?;
    let res = r.mul(&l1)?.mul(&l2)?.sub(&l2.mul(&l1)?.mul(&r)?)?;
    let m = lax.degree() as i32;
    Ok(res
        .terms()
        .filter(|((e1, e2), _)| *e1 <= m && *e2 <= m)
        .map(|(_, c)| c.max_abs())
        .fold(0.0, f64::max))
}

/// Ten fixed triples of distinct rationals used by the checks and tests.
pub fn sample_triples() -> Vec<(Rational, Rational, Rational)> {
    let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
    vec![
        (int(3), int(2), int(0)),
        (int(1), int(-1), int(5)),
        (r(1, 2), r(-3, 4), int(2)),
        (int(7), r(1, 3), r(-2, 5)),
        (r(5, 6), int(4), r(-7, 3)),
        (int(-2), r(9, 7), int(1)),
        (r(11, 5), int(0), r(-1, 8)),
        (int(10), int(-3), r(3, 2)),
        (r(-5, 9), r(2, 11), int(6)),
        (r(13, 4), r(-1, 6), r(7, 10)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yangian::GlRep;

    #[test]
    fn ybe_holds_for_the_rational_r_matrix() {
        for n in [2, 3] {
            for (a, b, c) in sample_triples() {
                assert!(ybe_residual(&yangian_r(n), &a, &b, &c).unwrap().is_zero());
                assert!(ybe_residual(&yangian_r_difference(n), &a, &b, &c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn bare_permutation_satisfies_the_braid_form() {
        let p = MatrixPoly::constant(permutation_op(2), 1);
        assert!(ybe_residual(&p, &int(1), &int(1), &int(1)).unwrap().is_zero());
    }

    #[test]
    fn ybe_fails_for_a_perturbed_r() {
        let r = yangian_r_difference(2).add(&MatrixPoly::constant(M::unit(4, 0, 1), 1)).unwrap();
        assert!(!ybe_residual(&r, &int(3), &int(2), &int(0)).unwrap().is_zero());
    }

    #[test]
    fn classical_ybe() {
        let r = classical_r(2);
        assert!(classical_ybe_residual(&r, &int(3), &int(2), &int(0)).unwrap().is_zero());
        assert_eq!(classical_ybe_residual(&r, &int(1), &int(1), &int(0)), Err(Error::SingularPoint));
    }

    #[test]
    fn rtt_for_the_fundamental_lax() {
        let samples: Vec<Rational> = (1..=4).map(int).collect();
        let rep = rtt_residual(&yangian_r(2), &LaxRep::fundamental(2), &samples).unwrap();
        assert_eq!(rep.degree_bounds, (2, 2));
        assert!(rep.is_zero());
        let rep = rtt_residual(&yangian_r_difference(3), &LaxRep::fundamental(3), &samples).unwrap();
        assert!(rep.is_zero());
        assert_eq!(
            rtt_residual(&yangian_r(2), &LaxRep::fundamental(2), &samples[..2]),
            Err(Error::InsufficientSamples { needed: 3, got: 2 })
        );
    }

    #[test]
    fn rtt_trivial_and_geometric() {
        let samples: Vec<Rational> = (1..=3).map(int).collect();
        assert!(rtt_residual(&yangian_r(2), &LaxRep::trivial(GlRep::fundamental(2)), &samples).unwrap().is_zero());
        let geo = LaxRep::geometric(GlRep::tensor_square(2), 3);
        assert_eq!(rtt_truncated_residual(&geo).unwrap(), 0.0);
        // 1 + ℙ/λ solves RTT in every representation; 1 − ℙ/λ does not.
        let rep = GlRep::tensor_square(2);
        let samples: Vec<Rational> = (1..=3).map(int).collect();
        assert!(rtt_residual(&yangian_r(2), &LaxRep::linear(rep.clone()), &samples).unwrap().is_zero());
        let flipped = LaxRep::from_coeffs(rep.clone(), vec![rep.p_matrix().neg()]).unwrap();
        assert!(!rtt_residual(&yangian_r(2), &flipped, &samples).unwrap().is_zero());
    }
}
