//! Gauge transformations of discrete fields and double-row monodromies
//! with a boundary operator.

use crate::error::{Error, Result};
use crate::expansion::{monodromy_direct, Direction, SiteOperatorFamily};
use crate::operator::Operator;
use crate::series::AlphaSeries;

/// Data for G_{n+1} = 𝕃̂_n G_n 𝕃_n^{-1}.
#[derive(Clone, Debug)]
pub struct GaugeProblem<O> {
    pub forward: SiteOperatorFamily<O>,
    pub target: SiteOperatorFamily<O>,
    pub g1: O,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct GaugeSolution<O> {
    /// G_1, …, G_{N+1}.
    pub g: Vec<AlphaSeries<O>>,
    /// G_{n+1} − 𝕃̂_n G_n 𝕃_n^{-1} for n = 1..=N.
    pub residuals: Vec<AlphaSeries<O>>,
}

impl<O: Operator> GaugeSolution<O> {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_abs()).fold(0.0, f64::max)
    }
}

fn check_sites<O: Operator>(a: &SiteOperatorFamily<O>, b: &SiteOperatorFamily<O>) -> Result<()> {
    if a.sites() != b.sites() {
        return Err(Error::InvalidArgument(format!("families have {} and {} sites", a.sites(), b.sites())));
    }
    crate::operator::ensure_compatible(a.like(), b.like())
}

fn site_inverse<O: Operator>(fam: &SiteOperatorFamily<O>, site: usize, order: usize) -> Result<AlphaSeries<O>> {
    fam.lax_series(site, order).inverse().map_err(|_| Error::SingularSite { site })
}

/// Solve the gauge recursion through the closed form G_n = T̂_n G_1 T_n^{-1}
/// (both products forward, T_1 = 1) and check it against the recursion
/// site by site.
pub fn gauge_solve<O: Operator>(p: &GaugeProblem<O>) -> Result<GaugeSolution<O>> {
    check_sites(&p.forward, &p.target)?;
    crate::operator::ensure_compatible(p.forward.like(), &p.g1)?;
    if p.g1.try_inverse().is_none() {
        return Err(Error::NotInvertible);
    }
    let d = p.order;
    let like = p.forward.like();
    let mut t_inv = AlphaSeries::identity(like, d);
    let mut t_hat = AlphaSeries::identity(like, d);
    let g1 = AlphaSeries::constant(p.g1.clone(), d);
    let mut g = vec![g1.clone()];
    let mut inverses = Vec::with_capacity(p.forward.sites());
    for n in 1..=p.forward.sites() {
        let inv = site_inverse(&p.forward, n, d)?;
        // T_{n+1}^{-1} = T_n^{-1} 𝕃_n^{-1}
        t_inv = t_inv.mul(&inv)?;
        t_hat = p.target.lax_series(n, d).mul(&t_hat)?;
        g.push(t_hat.mul(&g1)?.mul(&t_inv)?);
        inverses.push(inv);
    }
    let residuals = (1..=p.forward.sites())
        .map(|n| {
            let step = p.target.lax_series(n, d).mul(&g[n - 1])?.mul(&inverses[n - 1])?;
            g[n].sub(&step)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GaugeSolution { g, residuals })
}

/// Data for 𝕋 = T K T̂ with T forward over `forward` and T̂ backward over
/// `backward`.
#[derive(Clone, Debug)]
pub struct BoundaryProblem<O> {
    pub forward: SiteOperatorFamily<O>,
    pub backward: SiteOperatorFamily<O>,
    pub k: AlphaSeries<O>,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct DoubleRow<O> {
    /// 𝕋_1 = K, …, 𝕋_{N+1}.
    pub t: Vec<AlphaSeries<O>>,
    /// 𝕋_{n+1} − 𝕃_n 𝕋_n 𝕃̂_n for n = 1..=N.
    pub residuals: Vec<AlphaSeries<O>>,
    /// 𝕋_{N+1} against the product of the two full monodromies.
    pub closed_form: f64,
}

impl<O: Operator> DoubleRow<O> {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_abs()).fold(self.closed_form, f64::max)
    }
}

pub fn double_row_monodromy<O: Operator>(p: &BoundaryProblem<O>) -> Result<DoubleRow<O>> {
    check_sites(&p.forward, &p.backward)?;
    crate::operator::ensure_compatible(p.forward.like(), p.k.coeff(0))?;
    if p.k.coeff(0).try_inverse().is_none() {
        return Err(Error::NotInvertible);
    }
    let d = p.order;
    let k = p.k.truncate(d);
    let like = p.forward.like();
    let (mut fwd, mut bwd) = (AlphaSeries::identity(like, d), AlphaSeries::identity(like, d));
    let mut t = vec![k.clone()];
    for n in 1..=p.forward.sites() {
        fwd = p.forward.lax_series(n, d).mul(&fwd)?;
        bwd = bwd.mul(&p.backward.lax_series(n, d))?;
        t.push(fwd.mul(&k)?.mul(&bwd)?);
    }
    let residuals = (1..=p.forward.sites())
        .map(|n| {
            let step = p.forward.lax_series(n, d).mul(&t[n - 1])?.mul(&p.backward.lax_series(n, d))?;
            t[n].sub(&step)
        })
        .collect::<Result<Vec<_>>>()?;
    let full_fwd = monodromy_direct(&p.forward.with_direction(Direction::Forward), d);
    let full_bwd = monodromy_direct(&p.backward.with_direction(Direction::Backward), d);
    let closed_form = full_fwd.mul(&k)?.mul(&full_bwd)?.sub(&t[t.len() - 1])?.max_abs();
    Ok(DoubleRow { t, residuals, closed_form })
}

/// 𝕃̂_n(α) = 𝕃_n^{-1}(−α) at every site, truncated at `order`.
pub fn reflection_hat<O: Operator>(fam: &SiteOperatorFamily<O>, order: usize) -> Result<SiteOperatorFamily<O>> {
    let series = (1..=fam.sites())
        .map(|n| site_inverse(fam, n, order).map(|s| s.neg_alpha()))
        .collect::<Result<Vec<_>>>()?;
    SiteOperatorFamily::from_series(fam.like(), &series, fam.direction())
}
