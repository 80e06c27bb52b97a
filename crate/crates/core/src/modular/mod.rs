//! Theta null values, the lambda and J invariants, fundamental-domain
//! reduction, construction of the interpolation-basis forms as exact
//! q-series, and their numerical evaluation.

pub mod basis;
pub mod checks;
pub mod eval;
pub mod qseries;
pub mod reduce;
pub mod theta;

pub use basis::{basis_cached, d0_eval, gn_construct, minus_constant_term, RVBasis, Sign};
pub use checks::{
    decay_profile, modular_sign_check, verify_generating, DecayProfileReport, SignCheckReport,
};
pub use eval::{an_eval, an_eval_row, bn_eval, bn_eval_route, EvalRoute};
pub use qseries::{
    inv_j_series, j_series, lambda_series, one_minus_2lambda_series, theta3_cubed_series,
    theta3_series, QSeries,
};
pub use reduce::{reduce_to_fundamental, replay_word, ReductionResult};
pub use theta::{lambda_j_eval, theta_all, theta_eval, ThetaKind, UpperHalfPoint};
