use crate::error::{Error, Result};
use crate::operator::{commutator, Operator};
use crate::rota_baxter::{prelie_left_seq, prelie_right_seq, SiteSequence};
use crate::scalar::rat;

use super::dyson::{magnus_from_dyson, monodromy_direct};
use super::family::{Direction, SiteOperatorFamily};

/// Highest order with a closed form.
pub const CLOSED_FORM_MAX_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagnusStyle {
    /// Nested commutator sums over ordered sites.
    Explicit,
    /// Pre-Lie form: `▷` forward, `◁` backward.
    PreLie,
}

impl MagnusStyle {
    pub fn name(self) -> &'static str {
        match self {
            MagnusStyle::Explicit => "explicit",
            MagnusStyle::PreLie => "prelie",
        }
    }
}

/// A named group of terms in a closed-form coefficient.
#[derive(Clone, Debug)]
pub struct TermBlock<O> {
    pub label: &'static str,
    pub value: O,
    /// Defect of this block against the matching block of the pre-Lie form
    /// (which is checked against the recursion separately). `None` when the
    /// block is itself the pre-Lie form.
    pub defect: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ClosedFormReport<O> {
    pub style: MagnusStyle,
    pub direction: Direction,
    /// `Q^{(1)}, …` from the closed form.
    pub q: Vec<O>,
    /// The same coefficients from the `log` recursion.
    pub oracle: Vec<O>,
    /// Max-entry defect per order.
    pub defects: Vec<f64>,
    /// Order-by-order term breakdown, `blocks[m-1]`.
    pub blocks: Vec<Vec<TermBlock<O>>>,
}

impl<O: Operator> ClosedFormReport<O> {
    pub fn matches(&self) -> bool {
        self.q.iter().zip(&self.oracle).all(|(a, b)| a == b)
    }

    /// Labels of explicit-form blocks that disagree with their pre-Lie
    /// counterparts.
    pub fn offending_terms(&self) -> Vec<(usize, &'static str, f64)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(m, bs)| {
                bs.iter()
                    .filter_map(move |b| b.defect.filter(|d| *d != 0.0).map(|d| (m + 1, b.label, d)))
            })
            .collect()
    }
}

/// Closed-form Magnus coefficients through `order ≤ 3`, compared with the
/// recursion.
pub fn magnus_closed_form<O: Operator>(
    fam: &SiteOperatorFamily<O>,
    style: MagnusStyle,
    order: usize,
) -> Result<ClosedFormReport<O>> {
    if order > CLOSED_FORM_MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "closed forms stop at order {CLOSED_FORM_MAX_ORDER}; order {order} needs the recursion"
        )));
    }
    let t: Vec<O> = monodromy_direct(fam, order).coeffs()[1..].to_vec();
    let oracle = magnus_from_dyson(&t);
    let l: Vec<SiteSequence<O>> = (1..=3).map(|m| fam.degree_sequence(m)).collect();
    let prelie = prelie_blocks(&l, fam.direction())?;
    let blocks = match style {
        MagnusStyle::PreLie => prelie.clone(),
        MagnusStyle::Explicit => {
            let explicit = match fam.direction() {
                Direction::Forward => explicit_forward(&l),
                Direction::Backward => explicit_backward(&l),
            };
            explicit
                .into_iter()
                .zip(&prelie)
                .map(|(ex, pl)| {
                    ex.into_iter()
                        .zip(pl)
                        .map(|(mut e, p)| {
                            e.defect = Some(e.value.sub(&p.value).max_abs());
                            e
                        })
                        .collect()
                })
                .collect()
        }
    };
    let blocks: Vec<Vec<TermBlock<O>>> = blocks.into_iter().take(order).collect();
    let q: Vec<O> = blocks
        .iter()
        .map(|bs| bs.iter().fold(fam.like().clone(), |acc, b| acc.add(&b.value)))
        .collect();
    let defects = q.iter().zip(&oracle).map(|(a, b)| a.sub(b).max_abs()).collect();
    Ok(ClosedFormReport {
        style,
        direction: fam.direction(),
        q,
        oracle,
        defects,
        blocks,
    })
}

fn block<O>(label: &'static str, value: O) -> TermBlock<O> {
    TermBlock {
        label,
        value,
        defect: None,
    }
}

/// Pre-Lie blocks, grouped so that each block corresponds to one group of
/// the explicit form.
fn prelie_blocks<O: Operator>(l: &[SiteSequence<O>], dir: Direction) -> Result<Vec<Vec<TermBlock<O>>>> {
    let p = match dir {
        Direction::Forward => prelie_left_seq::<O>,
        Direction::Backward => prelie_right_seq::<O>,
    };
    let (a, b, c) = (&l[0], &l[1], &l[2]);
    let half = rat(-1, 2);
    let aa = p(a, a)?;
    // forward: ¼ (a▷a)▷a + 1/12 a▷(a▷a); backward: 1/12 (a◁a)◁a + ¼ a◁(a◁a)
    let (c_left, c_right) = match dir {
        Direction::Forward => (rat(1, 4), rat(1, 12)),
        Direction::Backward => (rat(1, 12), rat(1, 4)),
    };
    let cubic = p(&aa, a)?.total().scale(&c_left).add(&p(a, &aa)?.total().scale(&c_right));
    let mixed = p(b, a)?.add(&p(a, b)?)?.total().scale(&half);
    Ok(vec![
        vec![block("L1", a.total())],
        vec![block("L1 L1", aa.total().scale(&half)), block("L2", b.total())],
        vec![block("L1 L1 L1", cubic), block("L1 L2", mixed), block("L3", c.total())],
    ])
}

fn sites<O: Operator>(s: &SiteSequence<O>) -> Vec<&O> {
    s.values().iter().collect()
}

/// Explicit forward form; sites are 0-based internally.
fn explicit_forward<O: Operator>(l: &[SiteSequence<O>]) -> Vec<Vec<TermBlock<O>>> {
    let (x, b, c) = (sites(&l[0]), sites(&l[1]), sites(&l[2]));
    let zero = l[0].like().clone();
    let n_sites = x.len();
    let sixth = rat(1, 6);

    let mut q2 = zero.clone();
    for n in 0..n_sites {
        for n1 in 0..n {
            q2 = q2.add(&commutator(x[n], x[n1]).scale(&rat(1, 2)));
        }
        q2 = q2.sub(&x[n].mul(x[n]).scale(&rat(1, 2)));
    }

    let mut cubic = zero.clone();
    let mut mixed = zero.clone();
    for n in 0..n_sites {
        for n2 in 0..n {
            for n1 in 0..n2 {
                let t = commutator(x[n], &commutator(x[n2], x[n1])).add(&commutator(&commutator(x[n], x[n2]), x[n1]));
                cubic = cubic.add(&t.scale(&sixth));
            }
        }
        for n1 in 0..n {
            // the repeated index on the first product is transcribed as written
            let t = x[n1]
                .mul(&commutator(x[n1], x[n]))
                .add(&commutator(x[n1], x[n]).mul(x[n]));
            cubic = cubic.add(&t.scale(&sixth));
            let t = commutator(x[n1], &x[n].mul(x[n])).add(&commutator(&x[n1].mul(x[n1]), x[n]));
            cubic = cubic.add(&t.scale(&sixth));
        }
        cubic = cubic.add(&x[n].mul(x[n]).mul(x[n]).scale(&rat(1, 3)));
        mixed = mixed.sub(&x[n].mul(b[n]).add(&b[n].mul(x[n])).scale(&rat(1, 2)));
        for m in 0..n {
            mixed = mixed.sub(&commutator(x[m], b[n]).add(&commutator(b[m], x[n])).scale(&rat(1, 2)));
        }
    }
    vec![
        vec![block("L1", l[0].total())],
        vec![block("L1 L1", q2), block("L2", l[1].total())],
        vec![block("L1 L1 L1", cubic), block("L1 L2", mixed), block("L3", c.iter().fold(zero, |a, v| a.add(v)))],
    ]
}

/// Explicit backward form.
fn explicit_backward<O: Operator>(l: &[SiteSequence<O>]) -> Vec<Vec<TermBlock<O>>> {
    let (x, b, c) = (sites(&l[0]), sites(&l[1]), sites(&l[2]));
    let zero = l[0].like().clone();
    let n_sites = x.len();
    let sixth = rat(1, 6);

    let mut q2 = zero.clone();
    for n in 0..n_sites {
        for n1 in 0..n {
            q2 = q2.add(&commutator(x[n1], x[n]).scale(&rat(1, 2)));
        }
        q2 = q2.sub(&x[n].mul(x[n]).scale(&rat(1, 2)));
    }

    let mut cubic = zero.clone();
    let mut mixed = zero.clone();
    for n in 0..n_sites {
        for m in 0..n {
            for k in 0..m {
                let t = commutator(x[k], &commutator(x[m], x[n])).add(&commutator(&commutator(x[k], x[m]), x[n]));
                cubic = cubic.add(&t.scale(&sixth));
            }
        }
        for m in 0..n {
            let t = x[n]
                .mul(&commutator(x[n], x[m]))
                .add(&commutator(x[n], x[m]).mul(x[m]));
            cubic = cubic.add(&t.scale(&sixth));
            let t = commutator(x[n], &x[m].mul(x[m])).add(&commutator(&x[n].mul(x[n]), x[m]));
            cubic = cubic.add(&t.scale(&sixth));
        }
        cubic = cubic.add(&x[n].mul(x[n]).mul(x[n]).scale(&rat(1, 3)));
        mixed = mixed.sub(&x[n].mul(b[n]).add(&b[n].mul(x[n])).scale(&rat(1, 2)));
        for m in 0..n {
            mixed = mixed.sub(&commutator(x[n], b[m]).add(&commutator(b[n], x[m])).scale(&rat(1, 2)));
        }
    }
    vec![
        vec![block("L1", l[0].total())],
        vec![block("L1 L1", q2), block("L2", l[1].total())],
        vec![block("L1 L1 L1", cubic), block("L1 L2", mixed), block("L3", c.iter().fold(zero, |a, v| a.add(v)))],
    ]
}

/// Pre-Lie Magnus coefficients of a linear family `1 + αP_n` through order 3,
/// without the comparison machinery.
pub fn linear_prelie_magnus<O: Operator>(p: &SiteSequence<O>, dir: Direction) -> Result<Vec<O>> {
    let zero = SiteSequence::zeros(p.like(), p.len());
    let blocks = prelie_blocks(&[p.clone(), zero.clone(), zero], dir)?;
    Ok(blocks
        .iter()
        .map(|bs| bs.iter().fold(p.like().clone(), |acc, b| acc.add(&b.value)))
        .collect())
}
