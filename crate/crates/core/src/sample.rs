//! Seeded random inputs for property checks.
//!
//! All generators draw from ChaCha8 seeded with a `u64`, so a seed fixes
//! every sampled case on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expansion::{Direction, SiteOperatorFamily};
use crate::free::{FreeElement, Letter};
use crate::matrix::Matrix;
use crate::operator::Operator;
use crate::scalar::{int, rat, Rational};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-bound, bound]`.
pub fn int_matrix(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |_, _| int(rng.random_range(-bound..=bound)))
}

/// Entries `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn rational_matrix(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |_, _| {
        rat(rng.random_range(-bound..=bound), rng.random_range(1..=bound.max(1)))
    })
}

/// Integer matrix with nonzero determinant.
pub fn invertible_matrix(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix<Rational> {
    loop {
        let m = int_matrix(rng, n, bound);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random combination of up to `terms` words of length ≤ 2 over the
/// letters `name_site`, sites `1..=sites`, degree 1.
pub fn free_element(rng: &mut SampleRng, name: &str, sites: usize, terms: usize) -> FreeElement {
    let mut out = FreeElement::zero();
    for _ in 0..terms {
        let len = rng.random_range(1..=2);
        let word: Vec<Letter> = (0..len)
            .map(|_| Letter::new(name, rng.random_range(1..=sites), 1))
            .collect();
        let c = int(rng.random_range(-3..=3));
        out = out.add(&FreeElement::monomial(word, c));
    }
    out
}

/// A family of `dim × dim` rational matrices on every site and degree
/// `1..=degrees`.
pub fn matrix_family(
    rng: &mut SampleRng,
    dim: usize,
    sites: usize,
    degrees: usize,
    bound: i64,
    direction: Direction,
) -> SiteOperatorFamily<Matrix<Rational>> {
    let mut fam = SiteOperatorFamily::new(&Matrix::zeros(dim, dim), sites, direction);
    for site in 1..=sites {
        for d in 1..=degrees {
            fam.set(site, d, rational_matrix(rng, dim, bound)).expect("site and degree in range");
        }
    }
    fam
}
