//! Discrete Dyson series and Magnus expansions.
//!
//! [`monodromy_direct`] (an ordered product of truncated series) and
//! [`magnus_from_dyson`] (the `log` recursion through the Π table) are the
//! reference; the Dyson sums, tridendriform nestings and closed-form Magnus
//! coefficients are all compared against them.

mod dyson;
mod factorized;
mod family;
mod magnus;

pub use dyson::{
    compositions, dyson_terms, expand, magnus_from_dyson, monodromy_direct, pi_table, q_series, DysonMethod,
    ExpansionResult, PiTable,
};
pub use factorized::{factorized_expansion, FactorizedResult};
pub use family::{Direction, SiteOperatorFamily};
pub use magnus::{
    linear_prelie_magnus, magnus_closed_form, ClosedFormReport, MagnusStyle, TermBlock, CLOSED_FORM_MAX_ORDER,
};
