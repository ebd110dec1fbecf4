use crate::error::Result;
use crate::matrix::{kron_embed_dims, permutation_op, Matrix};
use crate::operator::{commutator, Operator};
use crate::rota_baxter::{prec, succ, SiteSequence};
use crate::scalar::{rat, Rational};
use crate::series::{series_log, AlphaSeries};

use super::lax::LaxRep;
use super::monodromy::{monodromy_coproduct, site_operator, Monodromy};

type M = Matrix<Rational>;

/// Defects of the Hopf-structure identities in the fundamental chain.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport {
    pub coproduct_q1: f64,
    /// Coproduct of Q^{(2)} with the left tensor factor on site 2, the
    /// outermost factor of 𝕃₀₂𝕃₀₁.
    pub coproduct_q2: f64,
    /// The same formula with the left tensor factor on site 1.
    pub coproduct_q2_swapped: f64,
    /// Order-2 logarithm against −½ℙ₀₁² − ½ℙ₀₂² + ½[ℙ₀₂, ℙ₀₁].
    pub log_order_two: f64,
    pub coassociativity: f64,
    pub counit_is_identity: bool,
    /// S(Q^{(1)}) + Q^{(1)} with S read off from 𝕃^{-1}.
    pub antipode_q1: f64,
    /// S(Q^{(2)}) from 𝕃^{-1} against −Q^{(2)} + ½Q^{(1)}. Not expected to
    /// vanish: the true value is quadratic in Q^{(1)}.
    pub antipode_q2_vs_linear_form: f64,
    /// S(Q^{(2)}_{ab}) for every (a, b), row-major.
    pub antipode_q2: Vec<M>,
}

impl HopfReport {
    /// All identities that must hold exactly.
    pub fn holds(&self) -> bool {
        self.coproduct_q1 == 0.0
            && self.coproduct_q2 == 0.0
            && self.log_order_two == 0.0
            && self.coassociativity == 0.0
            && self.counit_is_identity
            && self.antipode_q1 == 0.0
    }
}

/// Single-site logarithmic generators Q^{(m)}_{ab}, m = 1, 2.
fn local_q(lax: &LaxRep) -> Result<[Vec<M>; 2]> {
    let log = series_log(&lax.series(2))?;
    let n = lax.aux_dim();
    let blocks = |m: usize| (0..n * n).map(|t| log.coeff(m).block(n, t / n, t % n)).collect::<Vec<_>>();
    Ok([blocks(1), blocks(2)])
}

pub fn hopf_checks(n: usize) -> Result<HopfReport> {
    let lax = LaxRep::fundamental(n);
    let two = monodromy_coproduct(&lax, 2, 2)?;
    let log = two.log()?;
    let [q1, q2] = local_q(&lax)?;
    let at = |x: &M, site: usize| site_operator(x, site, 2);
    let tensor = |x: &M, y: &M, left_site: usize| -> Result<M> {
        let right_site = 3 - left_site;
        Ok(at(x, left_site)?.mul(&at(y, right_site)?))
    };

    let (mut cop1, mut cop2, mut cop2s) = (0f64, 0f64, 0f64);
    for a in 0..n {
        for b in 0..n {
            let ab = a * n + b;
            let d1 = at(&q1[ab], 1)?.add(&at(&q1[ab], 2)?);
            cop1 = cop1.max(d1.sub(&log.coeff(1).block(n, a, b)).max_abs());
            let local = at(&q2[ab], 1)?.add(&at(&q2[ab], 2)?);
            for (left, slot) in [(2usize, &mut cop2), (1, &mut cop2s)] {
                let mut cross = M::zeros(local.rows(), local.cols());
                for d in 0..n {
                    cross = cross
                        .add(&tensor(&q1[a * n + d], &q1[d * n + b], left)?)
                        .sub(&tensor(&q1[d * n + b], &q1[a * n + d], left)?);
                }
                let delta = local.add(&cross.scale(&rat(1, 2)));
                *slot = slot.max(delta.sub(&log.coeff(2).block(n, a, b)).max_abs());
            }
        }
    }

    let dims = [n, n, n];
    let p01 = kron_embed_dims(&permutation_op(n), &[0, 1], &dims)?;
    let p02 = kron_embed_dims(&permutation_op(n), &[0, 2], &dims)?;
    let half = rat(1, 2);
    let expected = p01
        .mul(&p01)
        .add(&p02.mul(&p02))
        .scale(&-half.clone())
        .add(&commutator(&p02, &p01).scale(&half));
    let log_order_two = log.coeff(2).sub(&expected).max_abs();

    let coassociativity = coassociativity_defect(&lax)?;
    let counit_is_identity = monodromy_coproduct(&lax, 0, 2)?.series().is_identity();

    let inv = lax.series(2).inverse()?;
    let s = |m: usize, a: usize, b: usize| inv.coeff(m).block(n, a, b);
    let (mut anti1, mut anti2) = (0f64, 0f64);
    let mut antipode_q2 = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            anti1 = anti1.max(s(1, a, b).add(&q1[a * n + b]).max_abs());
            let mut sq2 = s(2, a, b);
            for c in 0..n {
                sq2 = sq2.sub(&s(1, c, b).mul(&s(1, a, c)).scale(&half));
            }
            let linear = q2[a * n + b].neg().add(&q1[a * n + b].scale(&half));
            anti2 = anti2.max(sq2.sub(&linear).max_abs());
            antipode_q2.push(sq2);
        }
    }

    Ok(HopfReport {
        coproduct_q1: cop1,
        coproduct_q2: cop2,
        coproduct_q2_swapped: cop2s,
        log_order_two,
        coassociativity,
        counit_is_identity,
        antipode_q1: anti1,
        antipode_q2_vs_linear_form: anti2,
        antipode_q2,
    })
}

/// 𝕃₀₃(𝕃₀₂𝕃₀₁) against (𝕃₀₃𝕃₀₂)𝕃₀₁ and the three-site monodromy.
fn coassociativity_defect(lax: &LaxRep) -> Result<f64> {
    let order = 3;
    let mono = monodromy_coproduct(lax, 3, order)?;
    let site = |k: usize| -> AlphaSeries<M> { mono.family().lax_series(k, order) };
    let (l1, l2, l3) = (site(1), site(2), site(3));
    let right = l3.mul(&l2.mul(&l1)?)?;
    let left = l3.mul(&l2)?.mul(&l1)?;
    let a = right.sub(&left)?.max_abs();
    let b = right.sub(mono.series())?.max_abs();
    Ok(a.max(b))
}

/// Defects of the entrywise tridendriform and pre-Lie coproduct formulas
/// against the monodromy.
#[derive(Clone, Debug, PartialEq)]
pub struct CoproductReport {
    /// Index m − 1 holds the defect of Δ^{(N)}(L^{(m)}_{ab}).
    pub dyson_entries: Vec<f64>,
    pub q1: f64,
    pub q2: f64,
    /// x ≺ y against y ≻ x for operators on distinct slots.
    pub slot_symmetry: f64,
}

impl CoproductReport {
    pub fn all_zero(&self) -> bool {
        self.dyson_entries.iter().all(|d| *d == 0.0) && self.q1 == 0.0 && self.q2 == 0.0 && self.slot_symmetry == 0.0
    }
}

fn entry_sequence(x: &M, sites: usize, like: &M) -> Result<SiteSequence<M>> {
    let values = (1..=sites).map(|n| site_operator(x, n, sites)).collect::<Result<Vec<_>>>()?;
    SiteSequence::new(like, values)
}

pub fn coproduct_tridendriform_residual(lax: &LaxRep, sites: usize, max_degree: usize) -> Result<CoproductReport> {
    let mono: Monodromy = monodromy_coproduct(lax, sites, max_degree.max(2))?;
    let (n, qd) = (lax.aux_dim(), mono.quantum_dim());
    let like = M::zeros(qd, qd);
    let mut x: Vec<Vec<SiteSequence<M>>> = Vec::new();
    for m in 1..=max_degree {
        let row = (0..n * n)
            .map(|t| entry_sequence(&lax.coeff(m).block(n, t / n, t % n), sites, &like))
            .collect::<Result<Vec<_>>>()?;
        x.push(row);
    }

    // nested[m-1][ab]: site sequence whose total is Δ^{(N)}(L^{(m)}_{ab}).
    let mut nested: Vec<Vec<SiteSequence<M>>> = Vec::new();
    for m in 1..=max_degree {
        let mut row = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut acc = x[m - 1][a * n + b].clone();
                for j in 1..m {
                    for c in 0..n {
                        acc = acc.add(&prec(&x[j - 1][a * n + c], &nested[m - j - 1][c * n + b])?)?;
                    }
                }
                row.push(acc);
            }
        }
        nested.push(row);
    }
    let mut dyson_entries = Vec::new();
    for m in 1..=max_degree {
        let mut worst: f64 = 0.0;
        for t in 0..n * n {
            let lhs = nested[m - 1][t].total();
            worst = worst.max(lhs.sub(&mono.entry(m, t / n, t % n)?).max_abs());
        }
        dyson_entries.push(worst);
    }

    let log = mono.log()?;
    let [q1, q2] = local_q(lax)?;
    let q1s = q1.iter().map(|e| entry_sequence(e, sites, &like)).collect::<Result<Vec<_>>>()?;
    let (mut d1, mut d2, mut sym) = (0f64, 0f64, 0f64);
    let half = rat(1, 2);
    for a in 0..n {
        for b in 0..n {
            let ab = a * n + b;
            d1 = d1.max(q1s[ab].total().sub(&log.coeff(1).block(n, a, b)).max_abs());
            let mut delta = entry_sequence(&q2[ab], sites, &like)?;
            for c in 0..n {
                let (ac, cb) = (&q1s[a * n + c], &q1s[c * n + b]);
                let l = prec(ac, cb)?;
                let r = succ(ac, cb)?;
                delta = delta.sub(&r.sub(&l)?.scale(&half))?;
                sym = sym.max(l.sub(&succ(cb, ac)?)?.max_abs());
            }
            d2 = d2.max(delta.total().sub(&log.coeff(2).block(n, a, b)).max_abs());
        }
    }
    Ok(CoproductReport {
        dyson_entries,
        q1: d1,
        q2: d2,
        slot_symmetry: sym,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::yangian::GlRep;

    #[test]
    fn hopf_identities() {
        for n in [2, 3] {
            let r = hopf_checks(n).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.coproduct_q2_swapped > 0.0);
        }
    }

    #[test]
    fn antipode_order_two_value() {
        // S(Q^{(2)}_{ab}) = δ_{ab}·1 − (𝒩/2) e_{ba} in the fundamental rep.
        let n = 2;
        let r = hopf_checks(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                let mut expect = M::unit(n, b, a).scale(&rat(-(n as i64), 2));
                if a == b {
                    expect = expect.add(&M::identity(n));
                }
                assert_eq!(r.antipode_q2[a * n + b], expect);
            }
        }
        assert!(r.antipode_q2_vs_linear_form > 0.0);
    }

    #[test]
    fn coproduct_formulas() {
        for sites in [2, 3] {
            let r = coproduct_tridendriform_residual(&LaxRep::fundamental(2), sites, 3).unwrap();
            assert!(r.all_zero(), "{r:?}");
            assert_eq!(r.dyson_entries.len(), 3);
        }
        let geo = LaxRep::geometric(GlRep::tensor_square(2), 3);
        assert!(coproduct_tridendriform_residual(&geo, 2, 3).unwrap().all_zero());
        assert_eq!(int(0), int(0));
    }
}
