//! Numerical library for perturbed interpolation formulae: recovery of
//! band-limited functions from jittered samples (with and without
//! derivative data), discrete Hilbert-transform norm machinery with
//! closed-form perturbation bounds, construction and evaluation of the even
//! Fourier-interpolation basis at square-root nodes, and certified recovery
//! from jittered square-root nodes on weighted sequence spaces.

pub mod bandlimited;
pub mod error;
pub mod hilbert;
pub mod linop;
pub mod modular;
pub mod quad;
pub mod rvperturb;
pub mod seqspace;
pub mod verify;

pub use error::{Error, Result};
