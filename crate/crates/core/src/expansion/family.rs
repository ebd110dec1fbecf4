use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operator::{ensure_compatible, Operator};
use crate::rota_baxter::SiteSequence;
use crate::series::AlphaSeries;

/// Order of the site factors in a monodromy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `T = 𝕃_N ⋯ 𝕃_1`, built by `T_{n+1} = 𝕃_n T_n`.
    Forward,
    /// `T̂ = 𝕃_1 ⋯ 𝕃_N`, built by `T̂_{n+1} = T̂_n 𝕃_n`.
    Backward,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

/// Site operators `𝕃_n(α) = 1 + Σ_m α^m L^{(m)}_n`, stored sparsely by
/// `(site, degree)`. Sites are 1-based; absent entries are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteOperatorFamily<O> {
    like: O,
    sites: usize,
    coeffs: BTreeMap<(usize, usize), O>,
    direction: Direction,
}

impl<O: Operator> SiteOperatorFamily<O> {
    pub fn new(like: &O, sites: usize, direction: Direction) -> Self {
        Self {
            like: like.zero_like(),
            sites,
            coeffs: BTreeMap::new(),
            direction,
        }
    }

    /// The linear family `𝕃_n = 1 + α P_n`.
    pub fn linear(p: &SiteSequence<O>, direction: Direction) -> Self {
        let mut fam = Self::new(p.like(), p.len(), direction);
        for (k, v) in p.values().iter().enumerate() {
            fam.coeffs.insert((k + 1, 1), v.clone());
        }
        fam.prune();
        fam
    }

    /// Set `L^{(degree)}_site`; zero operators are not stored.
    pub fn set(&mut self, site: usize, degree: usize, op: O) -> Result<()> {
        if site == 0 || site > self.sites {
            return Err(Error::SiteOutOfRange {
                site,
                sites: self.sites,
            });
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("degree-0 coefficient is fixed to the identity".into()));
        }
        ensure_compatible(&self.like, &op)?;
        if op.is_zero() {
            self.coeffs.remove(&(site, degree));
        } else {
            self.coeffs.insert((site, degree), op);
        }
        Ok(())
    }

    pub fn with(mut self, site: usize, degree: usize, op: O) -> Result<Self> {
        self.set(site, degree, op)?;
        Ok(self)
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn like(&self) -> &O {
        &self.like
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        Self {
            direction,
            ..self.clone()
        }
    }

    /// Largest degree with a nonzero coefficient (0 for the identity family).
    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(|&(_, d)| d).max().unwrap_or(0)
    }

    pub fn coeff(&self, site: usize, degree: usize) -> O {
        self.coeffs
            .get(&(site, degree))
            .cloned()
            .unwrap_or_else(|| self.like.clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &O)> {
        self.coeffs.iter().map(|(&(s, d), v)| (s, d, v))
    }

    /// `(L^{(m)}_1, …, L^{(m)}_N)`.
    pub fn degree_sequence(&self, m: usize) -> SiteSequence<O> {
        SiteSequence::from_fn(&self.like, self.sites, |n| self.coeff(n, m)).expect("shapes checked on insert")
    }

    /// `𝕃_n(α)` truncated at `order`.
    pub fn lax_series(&self, site: usize, order: usize) -> AlphaSeries<O> {
        let mut s = AlphaSeries::identity(&self.like, order);
        for m in 1..=order {
            s.set_coeff(m, self.coeff(site, m));
        }
        s
    }

    /// Relabel sites `n ↦ N + 1 − n`.
    pub fn reversed(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(s, d), v)| ((self.sites + 1 - s, d), v.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Apply a map to every coefficient (e.g. a representation).
    pub fn map<P: Operator>(&self, like: &P, f: impl Fn(&O) -> P) -> SiteOperatorFamily<P> {
        let mut out = SiteOperatorFamily {
            like: like.zero_like(),
            sites: self.sites,
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, f(v))).collect(),
            direction: self.direction,
        };
        out.prune();
        out
    }

    /// Build from per-site series `𝕃_n(α)`; constant terms must be the
    /// identity.
    pub fn from_series(like: &O, series: &[AlphaSeries<O>], direction: Direction) -> Result<Self> {
        let mut fam = Self::new(like, series.len(), direction);
        for (k, s) in series.iter().enumerate() {
            if !s.coeff(0).is_identity() {
                return Err(Error::NonIdentityConstant);
            }
            for m in 1..=s.order() {
                fam.set(k + 1, m, s.coeff(m).clone())?;
            }
        }
        Ok(fam)
    }
}
