use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::rota_baxter::SiteSequence;
use crate::series::{series_exp, AlphaSeries};

use super::dyson::{expand, q_series};
use super::family::{Direction, SiteOperatorFamily};

#[derive(Clone, Debug)]
pub struct FactorizedResult<O> {
    /// Dressed operators `𝐏_n = (M_N⋯M_{n+1}) L_n (M_N⋯M_n)^{-1}`.
    pub dressed: SiteSequence<O>,
    /// `𝕄 = M_N ⋯ M_1`.
    pub m_total: O,
    /// Magnus coefficients of the dressed linear family.
    pub q: Vec<O>,
    /// `T_direct − exp(Q)·𝕄`, order by order.
    pub residual: AlphaSeries<O>,
}

/// Expansion of `∏_{n=N}^{1} (M_n + α L_n)` as `exp(Q)·𝕄` where `Q` is the
/// Magnus series of the linear family built from the dressed operators.
pub fn factorized_expansion<O: Operator>(
    m: &SiteSequence<O>,
    l: &SiteSequence<O>,
    order: usize,
) -> Result<FactorizedResult<O>> {
    m.zip(l, |a, _| a.clone())?;
    let n_sites = m.len();
    let like = m.like();
    let inverses: Vec<O> = m
        .values()
        .iter()
        .enumerate()
        .map(|(k, mk)| mk.try_inverse().ok_or(Error::SingularSite { site: k + 1 }))
        .collect::<Result<_>>()?;

    // upper[n] = M_N ⋯ M_{n+1}  (n = 0..=N, 1-based n; upper[N] = 1)
    let mut upper = vec![like.identity_like(); n_sites + 1];
    for n in (0..n_sites).rev() {
        upper[n] = upper[n + 1].mul(&m.values()[n]);
    }
    // (M_N ⋯ M_n)^{-1} = M_n^{-1} (M_N ⋯ M_{n+1})^{-1}
    let mut upper_inv = vec![like.identity_like(); n_sites + 1];
    for n in (0..n_sites).rev() {
        upper_inv[n] = inverses[n].mul(&upper_inv[n + 1]);
    }
    let dressed = SiteSequence::from_fn(like, n_sites, |n| {
        upper[n].mul(&l.values()[n - 1]).mul(&upper_inv[n - 1])
    })?;
    let m_total = upper[0].clone();

    let q = expand(&SiteOperatorFamily::linear(&dressed, Direction::Forward), order).q;
    let rebuilt = series_exp(&q_series(like, &q))?.right_mul(&m_total);

    let mut direct = AlphaSeries::identity(like, order);
    for n in 0..n_sites {
        let mut site = AlphaSeries::constant(m.values()[n].clone(), order);
        if order >= 1 {
            site.set_coeff(1, l.values()[n].clone());
        }
        direct = site.mul_unchecked(&direct);
    }
    Ok(FactorizedResult {
        dressed,
        m_total,
        q,
        residual: direct.sub(&rebuilt)?,
    })
}
