//! Exact Dyson and Magnus expansions, Rota-Baxter structures and
//! Yangian identity checks.

pub mod boundary;
pub mod brace;
pub mod continuum;
pub mod error;
pub mod expansion;
pub mod free;
pub mod matrix;
pub mod operator;
pub mod poly;
pub mod rota_baxter;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod yangian;

pub use boundary::{BoundaryProblem, GaugeProblem};
pub use continuum::{ConvergenceTable, MatrixField};
pub use error::{Error, Result};
pub use expansion::{Direction, SiteOperatorFamily};
pub use free::{FreeElement, Letter, Word};
pub use matrix::{kron_embed, kron_embed_dims, permutation_op, Matrix};
pub use operator::{ad_pow, commutator, Operator, Shape};
pub use poly::OpPoly;
pub use rota_baxter::{RotaBaxterOp, SiteSequence};
pub use scalar::{int, rat, Rational, Scalar};
pub use series::{series_exp, series_log, series_mul, AlphaSeries};
pub use yangian::{LaxRep, MatrixPoly};
