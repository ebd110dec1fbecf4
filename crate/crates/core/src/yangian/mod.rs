//! Rational R-matrix, RTT and Yangian identities checked in explicit
//! representations.
//!
//! Nothing here represents the abstract algebra. A relation that fails in a
//! representation is falsified; one that holds has only been confirmed in
//! that representation.

mod checks;
mod hopf;
mod lax;
mod matrix_poly;
mod monodromy;

pub use checks::{
    classical_r, classical_ybe_residual, rtt_residual, rtt_truncated_residual, sample_triples, ybe_residual, yangian_r,
    yangian_r_difference, RttReport,
};
pub use hopf::{coproduct_tridendriform_residual, hopf_checks, CoproductReport, HopfReport};
pub use lax::{GlRep, LaxRep};
pub use matrix_poly::MatrixPoly;
pub use monodromy::{
    monodromy_coproduct, q_generators_and_relations, site_operator, transfer_commute_residual, transfer_matrices,
    yangian_relations_max_defect, yangian_relations_residual, Monodromy, QRelations, DIMENSION_BUDGET,
};
