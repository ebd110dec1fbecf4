//! Continuous Magnus expansion on matrix fields A(x) and its relation to
//! the discrete expansions.
//!
//! Polynomial fields are handled exactly; convergence tables and evolution
//! residuals run in double precision.

mod convergence;
mod evolution;
mod exact;
mod field;

pub use convergence::{convergence_study, discretize, discretize_exact, ConvergenceRow, ConvergenceTable};
pub use evolution::{expm, gauge_evolution_residual, open_evolution_residual, rk4_path, FiniteDifference};
pub use exact::{
    bernoulli, continuous_dyson, magnus_bernoulli_iterate, magnus_continuous, ordered_integral, ContinuousDyson,
    ContinuousMagnus,
};
pub use field::MatrixField;
