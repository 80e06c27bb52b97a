//! Numerical evaluation of the Jacobi theta null values and of the lambda
//! and J invariants anywhere on the upper half-plane.
//!
//! Points close to the real axis are handled by argument reduction: the `S`
//! and `T` moves permute the three theta functions and contribute explicit
//! automorphy factors, and the reduced point has imaginary part at least
//! `sqrt(3)/2`, where the series converge with Gaussian speed.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

/// Point in the open upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperHalfPoint {
    re: f64,
    im: f64,
}

impl UpperHalfPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "point {re} + {im}i is not in the upper half-plane"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
}

// base series at a reduced point; |q| <= e^{-pi sqrt(3)/2} there, so a few
// terms give full precision, but the loop tolerates any im > 0
fn theta_series(z: Complex64) -> (Complex64, Complex64, Complex64) {
    let q = (Complex64::i() * PI * z).exp();
    let q4 = (Complex64::i() * PI * z / 4.0).exp();
    let one = Complex64::new(1.0, 0.0);
    let mut t3 = one;
    let mut t4 = one;
    let mut t2core = one; // sum_{n>=0} q^{n(n+1)}, n = 0 term
    let mut n = 1i64;
    loop {
        let qn2 = q.powi((n * n) as i32);
        let term3 = 2.0 * qn2;
        t3 += term3;
        t4 += if n % 2 == 0 { term3 } else { -term3 };
        let qnn = q.powi((n * (n + 1)) as i32);
        t2core += qnn;
        if (term3.norm() < 1e-18 * t3.norm() && qnn.norm() < 1e-18) || n > 64 {
            break;
        }
        n += 1;
    }
    (2.0 * q4 * t2core, t3, t4)
}

/// All three theta null values at `z`, via argument reduction.
pub fn theta_all(z: UpperHalfPoint) -> (Complex64, Complex64, Complex64) {
    // state: Theta_j(z_orig) = mult[j] * Theta_{perm[j]}(z_cur)
    let mut cur = z.to_complex();
    let mut mult = [Complex64::new(1.0, 0.0); 3];
    let mut perm = [0usize, 1, 2]; // indices into (Theta2, Theta3, Theta4)

    for _ in 0..10_000 {
        let k = cur.re.round();
        if k != 0.0 {
            // Theta(z_cur) in terms of Theta(z_cur - k):
            // Theta2 gains e^{i pi k / 4}; Theta3 and Theta4 swap when k is odd
            for j in 0..3 {
                if perm[j] == 0 {
                    mult[j] *= Complex64::from_polar(1.0, FRAC_PI_4 * k);
                } else if (k as i64).rem_euclid(2) == 1 {
                    perm[j] = if perm[j] == 1 { 2 } else { 1 };
                }
            }
            cur.re -= k;
        }
        if cur.norm() < 1.0 - 1e-15 {
            // Theta2(w) = (i/w)^{1/2} Theta4(-1/w), Theta3 -> Theta3,
            // Theta4 -> Theta2; i/w has positive real part for w in H
            let factor = (Complex64::i() / cur).sqrt();
            for j in 0..3 {
                mult[j] *= factor;
                perm[j] = match perm[j] {
                    0 => 2,
                    2 => 0,
                    other => other,
                };
            }
            cur = -1.0 / cur;
        } else if cur.re.abs() <= 0.5 + 1e-15 {
            break;
        }
    }
    debug_assert!(cur.im > 0.5, "reduction should have raised the point");
    let base = theta_series(cur);
    let pick = |i: usize| match i {
        0 => base.0,
        1 => base.1,
        _ => base.2,
    };
    (
        mult[0] * pick(perm[0]),
        mult[1] * pick(perm[1]),
        mult[2] * pick(perm[2]),
    )
}

/// Single theta null value. Truncated with a relative tail below 1e-14.
pub fn theta_eval(which: ThetaKind, z: UpperHalfPoint) -> Complex64 {
    let (t2, t3, t4) = theta_all(z);
    match which {
        ThetaKind::Theta2 => t2,
        ThetaKind::Theta3 => t3,
        ThetaKind::Theta4 => t4,
    }
}

/// The lambda invariant `theta2^4/theta3^4` and `J = lambda(1-lambda)/16`.
pub fn lambda_j_eval(z: UpperHalfPoint) -> (Complex64, Complex64) {
    let (t2, t3, _) = theta_all(z);
    let lam = (t2 / t3).powi(4);
    let j = lam * (1.0 - lam) / 16.0;
    (lam, j)
}
