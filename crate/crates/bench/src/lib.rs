//! Fixed-seed inputs shared by the benchmarks.

use magnus_core::continuum::MatrixField;
use magnus_core::sample;
use magnus_core::{int, Direction, Matrix, Rational, SiteOperatorFamily};

pub type M = Matrix<Rational>;

/// A random `dim × dim` family with degrees `1..=3` on every site.
pub fn family(dim: usize, sites: usize, seed: u64) -> SiteOperatorFamily<M> {
    let mut rng = sample::rng(seed);
    sample::matrix_family(&mut rng, dim, sites, 3, 3, Direction::Forward)
}

/// `A(x) = X + xY` on `[0, 1]` with small integer matrices.
pub fn linear_field(dim: usize, seed: u64) -> MatrixField {
    let mut rng = sample::rng(seed);
    let x = sample::int_matrix(&mut rng, dim, 3);
    let y = sample::int_matrix(&mut rng, dim, 3);
    MatrixField::linear(x, y, int(1)).expect("square operands")
}
