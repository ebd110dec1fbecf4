use num_traits::One;

use crate::error::Result;
use crate::operator::Operator;
use crate::rota_baxter::{prec, succ, SiteSequence};
use crate::scalar::{int, Rational};
use crate::series::AlphaSeries;

use super::family::{Direction, SiteOperatorFamily};

/// Ordered product of the site series, truncated at `order`. This is the
/// reference every other expansion is checked against.
pub fn monodromy_direct<O: Operator>(fam: &SiteOperatorFamily<O>, order: usize) -> AlphaSeries<O> {
    let mut t = AlphaSeries::identity(fam.like(), order);
    for n in 1..=fam.sites() {
        let l = fam.lax_series(n, order);
        t = match fam.direction() {
            Direction::Forward => l.mul_unchecked(&t),
            Direction::Backward => t.mul_unchecked(&l),
        };
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DysonMethod {
    /// Explicit sums over ordered site tuples.
    DirectSum,
    /// Nested `≺` (forward) or left-nested `≻` (backward).
    Tridendriform,
}

/// Ordered compositions of `m` with parts in `1..=max_part`.
pub fn compositions(m: usize, max_part: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=max_part.min(m) {
        for mut rest in compositions(m - first, max_part) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `T^{(1)}, …, T^{(order)}` (index 0 of the result is `T^{(1)}`).
pub fn dyson_terms<O: Operator>(fam: &SiteOperatorFamily<O>, order: usize, method: DysonMethod) -> Result<Vec<O>> {
    let max_part = fam.max_degree().max(1);
    (1..=order)
        .map(|m| {
            compositions(m, max_part)
                .iter()
                .try_fold(fam.like().clone(), |acc, parts| {
                    let term = match method {
                        DysonMethod::DirectSum => direct_sum_term(fam, parts),
                        DysonMethod::Tridendriform => trid_term(fam, parts)?,
                    };
                    Ok(acc.add(&term))
                })
        })
        .collect()
}

/// Sum over site tuples `s_1 < s_2 < … < s_k` of the product whose factors
/// are `L^{(parts[j])}_{s_j}`, ordered highest site leftmost (forward) or
/// lowest site leftmost (backward).
fn direct_sum_term<O: Operator>(fam: &SiteOperatorFamily<O>, parts: &[usize]) -> O {
    fn rec<O: Operator>(fam: &SiteOperatorFamily<O>, parts: &[usize], min_site: usize, prefix: O, acc: &mut O) {
        let Some((&d, rest)) = parts.split_first() else {
            *acc = acc.add(&prefix);
            return;
        };
        for s in min_site..=fam.sites() {
            let l = fam.coeff(s, d);
            if l.is_zero() {
                continue;
            }
            let next = match fam.direction() {
                Direction::Forward => l.mul(&prefix),
                Direction::Backward => prefix.mul(&l),
            };
            rec(fam, rest, s + 1, next, acc);
        }
    }
    let mut acc = fam.like().clone();
    rec(fam, parts, 1, fam.like().identity_like(), &mut acc);
    acc
}

/// Forward: `Σ_n (L^{(m_k)} ≺ (… ≺ (L^{(m_2)} ≺ L^{(m_1)})))_n` with `m_1`
/// on the lowest site. Backward: `Σ_n ((L^{(m_1)} ≻ L^{(m_2)}) ≻ …)_n`.
fn trid_term<O: Operator>(fam: &SiteOperatorFamily<O>, parts: &[usize]) -> Result<O> {
    let seq = |d: usize| fam.degree_sequence(d);
    let mut x: SiteSequence<O> = seq(parts[0]);
    for &d in &parts[1..] {
        x = match fam.direction() {
            Direction::Forward => prec(&seq(d), &x)?,
            Direction::Backward => succ(&x, &seq(d))?,
        };
    }
    Ok(x.total())
}

/// `Π^{(n)}_k` for `1 ≤ k ≤ n ≤ D`, stored at `[n][k]` (index 0 unused).
#[derive(Clone, Debug, PartialEq)]
pub struct PiTable<O> {
    rows: Vec<Vec<O>>,
}

impl<O: Operator> PiTable<O> {
    pub fn get(&self, n: usize, k: usize) -> &O {
        &self.rows[n][k]
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }
}

/// `Π^{(n)}_1 = T^{(n)}`, `Π^{(n)}_k = Σ_{m=1}^{n−k+1} T^{(m)} Π^{(n−m)}_{k−1}`.
pub fn pi_table<O: Operator>(t: &[O]) -> PiTable<O> {
    let d = t.len();
    let zero = t.first().map(O::zero_like);
    let mut rows: Vec<Vec<O>> = vec![Vec::new()];
    for n in 1..=d {
        let mut row = vec![zero.clone().expect("nonempty"); n + 1];
        row[1] = t[n - 1].clone();
        for k in 2..=n {
            let mut acc = row[0].clone();
            for m in 1..=n - k + 1 {
                acc = acc.add(&t[m - 1].mul(&rows[n - m][k - 1]));
            }
            row[k] = acc;
        }
        rows.push(row);
    }
    PiTable { rows }
}

/// `Q^{(m)} = T^{(m)} − Σ_{k=2}^{m} (−1)^k Π^{(m)}_k / k`, the coefficients
/// of `log(1 + Σ α^m T^{(m)})`.
pub fn magnus_from_dyson<O: Operator>(t: &[O]) -> Vec<O> {
    let pi = pi_table(t);
    (1..=t.len())
        .map(|m| {
            (2..=m).fold(t[m - 1].clone(), |acc, k| {
                let sign = if k % 2 == 0 { -Rational::one() } else { Rational::one() };
                acc.add(&pi.get(m, k).scale(&(sign / int(k as i64))))
            })
        })
        .collect()
}

/// Dyson coefficients, Π table and Magnus coefficients of one family.
#[derive(Clone, Debug)]
pub struct ExpansionResult<O> {
    pub t: Vec<O>,
    pub q: Vec<O>,
    pub pi: PiTable<O>,
}

pub fn expand<O: Operator>(fam: &SiteOperatorFamily<O>, order: usize) -> ExpansionResult<O> {
    let t: Vec<O> = monodromy_direct(fam, order).coeffs()[1..].to_vec();
    let pi = pi_table(&t);
    let q = magnus_from_dyson(&t);
    ExpansionResult { t, q, pi }
}

/// `Σ α^m Q^{(m)}` as a series with zero constant term.
pub fn q_series<O: Operator>(like: &O, q: &[O]) -> AlphaSeries<O> {
    AlphaSeries::from_terms(like, q.len(), q.iter().cloned().enumerate().map(|(k, c)| (k + 1, c)))
}
