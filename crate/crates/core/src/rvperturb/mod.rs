//! Perturbed recovery at square-root nodes on weighted sequence pairs:
//! operator assembly with Schur and Hilbert–Schmidt certificates, recovery
//! and the perturbed dual basis, square-summation compatibility checks, the
//! uniqueness-from-powers experiment, and the Laplace-transform sign rule.

pub mod descartes;
pub mod operator;
pub mod uniqueness;

pub use descartes::{descartes_count, refine_zero, sign_changes, LaplaceSample};
pub use operator::{
    basis_value, build_t_tilde, gaussian_pair, gaussian_pair_at_nodes, perturbed_basis_eval,
    poisson_check, recover_values, RVOperatorConfig, RecoveryOutcome, TtildeSystem,
};
pub use uniqueness::{build_tk0, powers_experiment, PowersReport, UniquenessConfig};
