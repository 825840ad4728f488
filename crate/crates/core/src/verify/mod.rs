//! Measured checks of the coherent-state properties.
//!
//! Every check carries its measured value and an explicit threshold. Phase
//! is invisible to densities, norms, moments and fidelities; the
//! Schrödinger residual and pointwise comparisons against the Fock
//! synthesis are the checks that see it.

mod observables;
mod residual;
mod suite;

pub use observables::{annihilation_apply, fidelity, uncertainty_product};
pub use residual::{
    default_probe_step, expected_phase_defect, schrodinger_residual, Family, ResidualReport,
};
pub use suite::{
    classical_trajectory_check, run_full_suite, Check, Relation, Suite, SuiteConfig,
    VerificationSuiteResult,
};
