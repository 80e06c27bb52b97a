//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("range violation: {0}")]
    RangeViolation(String),

    /// Power iteration ran out of iterations before meeting the tolerance.
    /// Carries the best estimate reached so callers can still use it as a
    /// lower bound on the largest singular value.
    #[error("power iteration stopped after {iterations} iterations with residual {residual:.3e} (best estimate {best})")]
    ConvergenceFailure {
        best: f64,
        iterations: usize,
        residual: f64,
    },

    #[error("linear solve failed: relative residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    SolveFailure { residual: f64, tol: f64 },

    #[error("invertibility not certified: bound {bound} on the identity deviation is >= 1")]
    NotCertified { bound: f64 },

    #[error("quadrature target not met: achieved error estimate {achieved:.3e}, requested {requested:.3e}")]
    QuadratureFailure { achieved: f64, requested: f64 },

    #[error("pole encountered at {0}")]
    Pole(f64),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("fundamental-domain reduction exceeded the iteration cap")]
    ReductionFailure,

    #[error("basis construction failed: {0}")]
    ConstructionFailure(String),

    #[error("kernel evaluation too close to its singular orbit")]
    KernelPole,
}

pub type Result<T> = std::result::Result<T, Error>;
