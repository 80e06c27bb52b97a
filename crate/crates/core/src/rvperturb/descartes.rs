//! Sign-change counting for Laplace transforms: the number of zeros of the
//! transform on a real half-line is at most the number of sign changes of
//! the original function.

use crate::error::{Error, Result};

/// Tabulated smooth function on `[0, T]` with a uniform grid, together with
/// the abscissa `s0` beyond which its Laplace transform converges.
#[derive(Clone, Debug)]
pub struct LaplaceSample {
    dt: f64,
    values: Vec<f64>,
    pub s0: f64,
}

impl LaplaceSample {
    /// Tabulate `phi` on `[0, t_max]` with `steps` intervals (even count so
    /// composite Simpson applies exactly).
    pub fn from_fn(phi: impl Fn(f64) -> f64, t_max: f64, steps: usize, s0: f64) -> Result<Self> {
        if t_max <= 0.0 || steps < 2 {
            return Err(Error::InvalidArgument(
                "need a positive range and at least 2 steps".into(),
            ));
        }
        let steps = steps + steps % 2;
        let dt = t_max / steps as f64;
        let values = (0..=steps).map(|i| phi(i as f64 * dt)).collect();
        Ok(Self { dt, values, s0 })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Composite-Simpson evaluation of `int_0^T phi(t) e^{-s t} dt`.
    pub fn laplace_transform(&self, s: f64) -> f64 {
        let f = |i: usize| self.values[i] * (-s * i as f64 * self.dt).exp();
        let n = self.values.len() - 1;
        let mut acc = f(0) + f(n);
        for i in 1..n {
            acc += f(i) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * self.dt / 3.0
    }
}

/// Count strict sign changes of a sampled function, ignoring entries below
/// an absolute floor.
pub fn sign_changes(values: &[f64], floor: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// Evaluate the transform on a grid inside its convergence half-line and
/// count the sign changes of both sides. Each sign change of the transform
/// witnesses at least one zero, so the second count never exceeds the
/// first.
pub fn descartes_count(sample: &LaplaceSample, s_grid: &[f64]) -> Result<(usize, usize)> {
    if s_grid.is_empty() || s_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("grid must be increasing".into()));
    }
    if s_grid[0] <= sample.s0 {
        return Err(Error::InvalidArgument(format!(
            "grid must stay above the convergence abscissa {}",
            sample.s0
        )));
    }
    let phi_changes = sign_changes(sample.values(), 0.0);
    let transform: Vec<f64> = s_grid.iter().map(|&s| sample.laplace_transform(s)).collect();
    // floor out quadrature noise so spurious micro-oscillations of a
    // numerically zero transform are not counted as zeros
    let scale = transform.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let zeros_found = sign_changes(&transform, 1e-12 * scale.max(1e-300));
    Ok((phi_changes, zeros_found))
}

/// Bisect one sign change of the transform to locate the witnessed zero.
pub fn refine_zero(sample: &LaplaceSample, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let flo = sample.laplace_transform(lo);
    let fhi = sample.laplace_transform(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidArgument(
            "no sign change on the bracketing interval".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = sample.laplace_transform(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
