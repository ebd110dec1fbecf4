use crate::error::{Error, Result};
use crate::expansion::{monodromy_direct, Direction, SiteOperatorFamily};
use crate::matrix::{kron_embed_dims, Matrix};
use crate::operator::{commutator, Operator};
use crate::scalar::{rat, Rational};
use crate::series::{series_log, AlphaSeries};

use super::lax::LaxRep;

type M = Matrix<Rational>;

/// Largest total dimension (auxiliary times quantum space) accepted by the
/// multi-site constructions.
pub const DIMENSION_BUDGET: usize = 256;

/// T = 𝕃_{0N}…𝕃_{01} with the auxiliary space in slot 0 and the quantum
/// sites in slots 1..=N.
#[derive(Clone, Debug)]
pub struct Monodromy {
    aux: usize,
    site_dim: usize,
    sites: usize,
    family: SiteOperatorFamily<M>,
    t: AlphaSeries<M>,
}

impl Monodromy {
    pub fn aux_dim(&self) -> usize {
        self.aux
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Dimension of the quantum space (site_dim^N).
    pub fn quantum_dim(&self) -> usize {
        self.site_dim.pow(self.sites as u32)
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    /// The per-site family 𝕃_{0n} on the full space.
    pub fn family(&self) -> &SiteOperatorFamily<M> {
        &self.family
    }

    pub fn series(&self) -> &AlphaSeries<M> {
        &self.t
    }

    pub fn coeff(&self, m: usize) -> Result<&M> {
        if m > self.t.order() {
            return Err(Error::MissingOrder {
                needed: m,
                available: self.t.order(),
            });
        }
        Ok(self.t.coeff(m))
    }

    /// T^{(m)}_{a,b}: the (a, b) block with respect to the auxiliary slot.
    pub fn entry(&self, m: usize, a: usize, b: usize) -> Result<M> {
        Ok(self.coeff(m)?.block(self.aux, a, b))
    }

    /// Coefficients of log T, Q^{(0)} = 0.
    pub fn log(&self) -> Result<AlphaSeries<M>> {
        series_log(&self.t)
    }
}

/// Embed a single-site operator into the N-site quantum space.
pub fn site_operator(op: &M, site: usize, sites: usize) -> Result<M> {
    if site == 0 || site > sites {
        return Err(Error::SiteOutOfRange { site, sites });
    }
    kron_embed_dims(op, &[site - 1], &vec![op.rows(); sites])
}

/// Realize (id ⊗ Δ^{(N)})𝕃 as the ordered product of embedded lax operators.
pub fn monodromy_coproduct(lax: &LaxRep, sites: usize, order: usize) -> Result<Monodromy> {
    let (aux, q) = (lax.aux_dim(), lax.quantum_dim());
    let dim = q
        .checked_pow(sites as u32)
        .and_then(|d| d.checked_mul(aux))
        .filter(|d| *d <= DIMENSION_BUDGET)
        .ok_or(Error::DimensionBudget {
            dim: aux.saturating_mul(q.saturating_pow(sites as u32)),
            limit: DIMENSION_BUDGET,
        })?;
    let mut dims = vec![q; sites + 1];
    dims[0] = aux;
    let mut family = SiteOperatorFamily::new(&M::zeros(dim, dim), sites, Direction::Forward);
    for n in 1..=sites {
        for m in 1..=lax.degree().min(order) {
            family.set(n, m, kron_embed_dims(&lax.coeff(m), &[0, n], &dims)?)?;
        }
    }
    let t = monodromy_direct(&family, order);
    Ok(Monodromy {
        aux,
        site_dim: q,
        sites,
        family,
        t,
    })
}

/// 𝔱^{(k)} = tr₀ T^{(k)} for k = 0..=order.
pub fn transfer_matrices(mono: &Monodromy) -> Vec<M> {
    mono.t.coeffs().iter().map(|c| c.partial_trace_first(mono.aux)).collect()
}

/// Largest entry of [𝔱^{(k)}, 𝔱^{(l)}] over all k, l ≤ order for the
/// fundamental chain.
pub fn transfer_commute_residual(n: usize, sites: usize, order: usize) -> Result<f64> {
    let mono = monodromy_coproduct(&LaxRep::fundamental(n), sites, order)?;
    let t = transfer_matrices(&mono);
    let mut worst: f64 = 0.0;
    for k in 0..t.len() {
        for l in k + 1..t.len() {
            worst = worst.max(commutator(&t[k], &t[l]).max_abs());
        }
    }
    Ok(worst)
}

/// Generator T^{(m)}_{ij} with T^{(0)}_{ij} = δ_{ij}.
fn gen(mono: &Monodromy, m: usize, i: usize, j: usize) -> Result<M> {
    mono.entry(m, i, j)
}

/// [L^{(n+1)}_{ij}, L^{(m)}_{kl}] − [L^{(n)}_{ij}, L^{(m+1)}_{kl}]
/// − L^{(m)}_{kj}L^{(n)}_{il} + L^{(n)}_{kj}L^{(m)}_{il}
/// evaluated on the monodromy generators.
pub fn yangian_relations_residual(mono: &Monodromy, n: usize, m: usize, idx: (usize, usize, usize, usize)) -> Result<M> {
    let (i, j, k, l) = idx;
    if [i, j, k, l].iter().any(|&x| x >= mono.aux) {
        return Err(Error::InvalidArgument(format!("index out of range for 𝒩 = {}", mono.aux)));
    }
    let lhs = commutator(&gen(mono, n + 1, i, j)?, &gen(mono, m, k, l)?)
        .sub(&commutator(&gen(mono, n, i, j)?, &gen(mono, m + 1, k, l)?));
    let rhs = gen(mono, m, k, j)?
        .mul(&gen(mono, n, i, l)?)
        .sub(&gen(mono, n, k, j)?.mul(&gen(mono, m, i, l)?));
    Ok(lhs.sub(&rhs))
}

/// Largest relation residual over all index tuples and all n + m ≤ `total`.
pub fn yangian_relations_max_defect(mono: &Monodromy, total: usize) -> Result<f64> {
    let a = mono.aux;
    let mut worst: f64 = 0.0;
    for n in 0..=total {
        for m in 0..=total - n {
            for t in 0..a * a * a * a {
                let idx = (t / (a * a * a), (t / (a * a)) % a, (t / a) % a, t % a);
                worst = worst.max(yangian_relations_residual(mono, n, m, idx)?.max_abs());
            }
        }
    }
    Ok(worst)
}

/// The logarithmic generators and the defects of their three displayed
/// relation families. The cubic correction of the third family is
/// ambiguous, so both readings are reported.
#[derive(Clone, Debug)]
pub struct QRelations {
    /// Q^{(1)}, Q^{(2)}, Q^{(3)} on the full space.
    pub q: Vec<M>,
    pub q1_q1: f64,
    pub q1_q2: f64,
    /// Both cubic terms carry 1/12.
    pub q2_q2_shared_twelfth: f64,
    /// 1/12 on the first cubic term only.
    pub q2_q2_split_twelfth: f64,
}

pub fn q_generators_and_relations(mono: &Monodromy) -> Result<QRelations> {
    if mono.order() < 3 {
        return Err(Error::MissingOrder {
            needed: 3,
            available: mono.order(),
        });
    }
    let log = mono.log()?;
    let a = mono.aux;
    let q: Vec<M> = (1..=3).map(|m| log.coeff(m).clone()).collect();
    let q1sq = q[0].mul(&q[0]);
    let q1cube = q1sq.mul(&q[0]);
    let e = |x: &M, i: usize, j: usize| x.block(a, i, j);
    let zero = M::zeros(mono.quantum_dim(), mono.quantum_dim());
    let delta = |i: usize, j: usize, x: M| if i == j { x } else { zero.clone() };
    let (quarter, twelfth) = (rat(1, 4), rat(1, 12));

    let (mut f1, mut f2, mut f3a, mut f3b) = (0f64, 0f64, 0f64, 0f64);
    for t in 0..a * a * a * a {
        let (i, j, k, l) = (t / (a * a * a), (t / (a * a)) % a, (t / a) % a, t % a);
        for (level, slot) in [(0usize, &mut f1), (1, &mut f2)] {
            let lhs = commutator(&e(&q[0], i, j), &e(&q[level], k, l));
            let rhs = delta(i, l, e(&q[level], k, j)).sub(&delta(k, j, e(&q[level], i, l)));
            *slot = slot.max(lhs.sub(&rhs).max_abs());
        }
        let lhs = commutator(&e(&q[1], i, j), &e(&q[1], k, l));
        let base = delta(i, l, e(&q[2], k, j))
            .sub(&delta(k, j, e(&q[2], i, l)))
            .sub(&e(&q[0], k, j).mul(&e(&q1sq, i, l)).scale(&quarter))
            .add(&e(&q1sq, k, j).mul(&e(&q[0], i, l)).scale(&quarter));
        let first = delta(k, j, e(&q1cube, i, l));
        let second = delta(i, l, e(&q1cube, k, j));
        let shared = base.add(&first.sub(&second).scale(&twelfth));
        let split = base.add(&first.scale(&twelfth)).sub(&second);
        f3a = f3a.max(lhs.sub(&shared).max_abs());
        f3b = f3b.max(lhs.sub(&split).max_abs());
    }
    Ok(QRelations {
        q,
        q1_q1: f1,
        q1_q2: f2,
        q2_q2_shared_twelfth: f3a,
        q2_q2_split_twelfth: f3b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::permutation_op;
    use crate::scalar::int;
    use crate::yangian::GlRep;

    fn p0(n: usize, site: usize, sites: usize) -> M {
        kron_embed_dims(&permutation_op(n), &[0, site], &vec![n; sites + 1]).unwrap()
    }

    #[test]
    fn single_site_is_the_lax() {
        let lax = LaxRep::fundamental(2);
        let mono = monodromy_coproduct(&lax, 1, 3).unwrap();
        assert_eq!(mono.series(), &lax.series(3));
    }

    #[test]
    fn two_site_coefficients() {
        let mono = monodromy_coproduct(&LaxRep::fundamental(2), 2, 3).unwrap();
        assert_eq!(mono.coeff(1).unwrap(), &p0(2, 1, 2).add(&p0(2, 2, 2)));
        assert_eq!(mono.coeff(2).unwrap(), &p0(2, 2, 2).mul(&p0(2, 1, 2)));
        assert!(mono.coeff(3).unwrap().is_zero());
        assert!(matches!(mono.coeff(4), Err(Error::MissingOrder { .. })));
    }

    #[test]
    fn dimension_budget() {
        assert!(monodromy_coproduct(&LaxRep::fundamental(2), 7, 2).is_ok());
        assert_eq!(
            monodromy_coproduct(&LaxRep::fundamental(2), 8, 2).unwrap_err(),
            Error::DimensionBudget { dim: 512, limit: 256 }
        );
    }

    #[test]
    fn transfer_matrices_commute() {
        let mono = monodromy_coproduct(&LaxRep::fundamental(2), 1, 2).unwrap();
        let t = transfer_matrices(&mono);
        assert_eq!(t[0], M::scalar(2, int(2)));
        assert_eq!(t[1], M::identity(2));
        for sites in 1..=4 {
            assert_eq!(transfer_commute_residual(2, sites, sites).unwrap(), 0.0);
        }
        for sites in 1..=2 {
            assert_eq!(transfer_commute_residual(3, sites, sites).unwrap(), 0.0);
        }
    }

    #[test]
    fn yangian_relations_hold() {
        for sites in 1..=3 {
            let mono = monodromy_coproduct(&LaxRep::fundamental(2), sites, 4).unwrap();
            assert_eq!(yangian_relations_max_defect(&mono, 3).unwrap(), 0.0);
        }
        let geo = monodromy_coproduct(&LaxRep::geometric(GlRep::tensor_square(2), 4), 1, 4).unwrap();
        assert_eq!(yangian_relations_max_defect(&geo, 3).unwrap(), 0.0);
    }

    #[test]
    fn q_relations() {
        for sites in [2, 3] {
            let mono = monodromy_coproduct(&LaxRep::fundamental(2), sites, 3).unwrap();
            let r = q_generators_and_relations(&mono).unwrap();
            assert_eq!(&r.q[0], mono.coeff(1).unwrap());
            assert_eq!(r.q1_q1, 0.0);
            assert_eq!(r.q1_q2, 0.0);
            assert_eq!(r.q2_q2_shared_twelfth, 0.0);
            assert!(r.q2_q2_split_twelfth > 0.0);
        }
        let short = monodromy_coproduct(&LaxRep::fundamental(2), 2, 2).unwrap();
        assert!(q_generators_and_relations(&short).is_err());
    }
}
