//! Reduction of an upper half-plane point into the fundamental domain
//! `{ |z| >= 1, |Re z| <= 1 }` of the group generated by `z -> -1/z` and
//! `z -> z + 2`, recording the move word so the reduction can be replayed.

use crate::error::{Error, Result};
use crate::modular::theta::UpperHalfPoint;
use num_complex::Complex64;

const BOUNDARY_TOL: f64 = 1e-12;
const ITERATION_CAP: usize = 1_000_000;

/// Outcome of the reduction: the reduced point, the step count, the integer
/// word (one translation amount per inversion step), and the imaginary part
/// of the reduced point.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub tau_prime: UpperHalfPoint,
    pub steps: usize,
    pub word: Vec<i64>,
    pub im_reduced: f64,
}

fn in_closed_domain(z: Complex64) -> bool {
    z.norm() >= 1.0 - BOUNDARY_TOL && z.re.abs() <= 1.0 + BOUNDARY_TOL
}

/// Iterate `gamma_i = -1/gamma_{i-1} - 2 n_i` with
/// `n_i = floor((Re(-1/gamma_{i-1}) + 1)/2)` until the point lands in the
/// closed fundamental domain.
pub fn reduce_to_fundamental(tau: UpperHalfPoint) -> Result<ReductionResult> {
    let mut z = tau.to_complex();
    let mut word = Vec::new();
    if in_closed_domain(z) {
        return Ok(ReductionResult {
            tau_prime: tau,
            steps: 0,
            word,
            im_reduced: tau.im(),
        });
    }
    for _ in 0..ITERATION_CAP {
        let inverted = -1.0 / z;
        let n = ((inverted.re + 1.0) / 2.0).floor() as i64;
        z = inverted - 2.0 * n as f64;
        word.push(n);
        if in_closed_domain(z) {
            return Ok(ReductionResult {
                tau_prime: UpperHalfPoint::from_complex(z)?,
                steps: word.len(),
                word,
                im_reduced: z.im,
            });
        }
    }
    Err(Error::ReductionFailure)
}

/// Replay a reduction word backwards, mapping the reduced point to the
/// original one: each step undoes `w -> -1/w - 2n` as `w -> -1/(w + 2n)`.
pub fn replay_word(tau_prime: UpperHalfPoint, word: &[i64]) -> Complex64 {
    let mut z = tau_prime.to_complex();
    for &n in word.iter().rev() {
        z = -1.0 / (z + 2.0 * n as f64);
    }
    z
}
