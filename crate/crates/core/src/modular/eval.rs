//! Numerical evaluation of the interpolation basis.
//!
//! Three complementary representations are used, each in the regime where
//! it is well conditioned in double precision:
//!
//! * value-side integral over the boundary line (valid for `x^2 > n`):
//!   `b(x) = sin(pi x^2) * int_0^inf g(1+it) e^{-pi x^2 t} dt`;
//! * contour integral `b(x) = 1/2 int g(z) e^{i pi x^2 z} dz` over the
//!   polyline through height `1` (used for small degrees);
//! * Fourier-coefficient extraction from the generating kernel at low
//!   imaginary part, propagated there by the kernel's functional equation
//!   (used for `x^2 <= n + 1/2` at larger degrees, where the direct
//!   contour loses `~e^{pi n}` in cancellation).

use crate::error::{Error, Result};
use crate::modular::basis::{basis_cached, RVBasis, Sign};
use crate::modular::theta::{theta_all, UpperHalfPoint};
use crate::quad::{adaptive_complex, adaptive_real};
use num_complex::Complex64;
use std::f64::consts::PI;

const CUSP_FLOOR: f64 = 0.006;
const FORM_SWITCH_T: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalRoute {
    Auto,
    Laplace,
    Contour,
    Kernel,
}

/// Pointwise value of the form at `z`, through the closed product
/// representation. Stable against overflow near both cusps.
pub(crate) fn g_point(basis: &RVBasis, z: Complex64) -> Complex64 {
    if basis.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let pt = UpperHalfPoint::new(z.re, z.im).expect("upper half-plane point");
    let (t2, t3, _) = theta_all(pt);
    let t3c = t3 * t3 * t3;
    if t3c.norm() < 1e-140 {
        // deep in a cusp neighbourhood the form vanishes faster than any
        // tolerance we certify
        return Complex64::new(0.0, 0.0);
    }
    let lam = (t2 / t3).powi(4);
    let j = lam * (1.0 - lam) / 16.0;
    let p = basis.p_f64();
    match basis.sign() {
        Sign::Plus => {
            let u = 1.0 / j;
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.iter().rev() {
                acc = acc * u + c;
            }
            t3c * acc
        }
        Sign::Minus => {
            // (1-2 lambda)/J evaluated without forming lambda^2
            let ratio = if lam.norm() > 1e60 {
                16.0 * (1.0 / lam - 2.0) / (1.0 - lam)
            } else {
                (1.0 - 2.0 * lam) / j
            };
            let u = 1.0 / j;
            // P(u)/u with zero constant coefficient
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.iter().skip(1).rev() {
                acc = acc * u + c;
            }
            t3c * ratio * acc
        }
    }
}

/// Lead-factored value `g(1+it) * q^n` used past the switch point, where
/// `|g|` would overflow while the integrand stays tame: Horner in `J`
/// against the reversed polynomial, times `(q/J)^n`.
fn g_scaled_large_t(basis: &RVBasis, t: f64) -> f64 {
    let z = Complex64::new(1.0, t);
    let pt = UpperHalfPoint::new(1.0, t).expect("upper half-plane point");
    let (t2, t3, _) = theta_all(pt);
    let lam = (t2 / t3).powi(4);
    let j = lam * (1.0 - lam) / 16.0;
    let q = (Complex64::i() * PI * z).exp();
    let qj = q / j; // bounded near 1 for large t
    let p = basis.p_f64();
    let n = basis.n() as i32;
    // sum_m c_m J^{n-m} by Horner: ascending m pairs with descending powers
    let value = match basis.sign() {
        Sign::Plus => {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.iter() {
                acc = acc * j + c;
            }
            t3 * t3 * t3 * qj.powi(n) * acc
        }
        Sign::Minus => {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in p.iter().skip(1) {
                acc = acc * j + c;
            }
            t3 * t3 * t3 * (1.0 - 2.0 * lam) * qj.powi(n) * acc
        }
    };
    debug_assert!(value.im.abs() <= 1e-8 * value.re.abs().max(1.0));
    value.re
}

/// Value-side route, valid for `x^2 > n`. Splits the half-line into a
/// direct part, a lead-factored part, and an exact series tail.
fn bn_laplace(basis: &RVBasis, x: f64, tol: f64) -> Result<f64> {
    let n = basis.n() as f64;
    let xx = x * x;
    if xx <= n {
        return Err(Error::InvalidArgument(format!(
            "value-side route needs x^2 > n, got x^2 = {xx}, n = {n}"
        )));
    }
    if basis.is_zero() {
        return Ok(0.0);
    }
    let t_top = (n.sqrt() + 0.5).max(FORM_SWITCH_T + 0.5);
    let quad_tol = (tol * 0.25).max(1e-15);

    // direct product form below the switch point
    let mut f_low = |t: f64| g_point(basis, Complex64::new(1.0, t)).re * (-PI * xx * t).exp();
    let low = adaptive_real(&mut f_low, CUSP_FLOOR, FORM_SWITCH_T, quad_tol, 600);

    // lead-factored form up to the tail cut
    let mut f_high =
        |t: f64| g_scaled_large_t(basis, t) * (-PI * (xx - n) * t).exp();
    let high = adaptive_real(&mut f_high, FORM_SWITCH_T, t_top, quad_tol, 300);

    // series tail: int_T^inf sum c_m (-1)^m e^{-pi (m + x^2) t} dt
    let mut tail = 0.0f64;
    let mut last_term: f64 = 0.0;
    let ni = basis.n() as i64;
    for (idx, &c) in basis.g_coeffs_f64().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let m = idx as i64 - ni;
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let denom = PI * (m as f64 + xx);
        last_term = c * sign * (-denom * t_top).exp() / denom;
        tail += last_term;
    }

    // contribution of (0, cusp floor), bounded by the cusp decay of the form
    let cusp_bound = cusp_remainder_bound(basis);

    let err = low.abs_err + high.abs_err + last_term.abs() + cusp_bound;
    if err > tol.max(1e-12) {
        return Err(Error::QuadratureFailure {
            achieved: err,
            requested: tol,
        });
    }
    Ok((PI * xx).sin() * (low.value.re + high.value.re + tail))
}

fn cusp_remainder_bound(basis: &RVBasis) -> f64 {
    // |g(1+it)| <= 8 t^{-3/2} e^{-3 pi/(4t)} * (|c0| + |c1| + 1) for
    // t below the floor; integrate the envelope crudely
    let scale: f64 = basis
        .p_f64()
        .iter()
        .take(2)
        .map(|c| c.abs())
        .sum::<f64>()
        + 1.0;
    let t = CUSP_FLOOR;
    8.0 * t.powf(-1.5) * (-3.0 * PI / (4.0 * t)).exp() * scale * t
}

/// Contour route over the polyline `-1 -> -1+i -> 1+i -> 1`. Accurate for
/// small degrees; the integrand reaches `~e^{pi n}` so double precision
/// limits it to `n <= 6` or so.
fn bn_contour(basis: &RVBasis, x: f64, tol: f64) -> Result<f64> {
    if basis.is_zero() {
        return Ok(0.0);
    }
    let xx = x * x;
    let quad_tol = (tol * 0.2).max(1e-15);
    let phase = |z: Complex64| (Complex64::i() * PI * xx * z).exp();

    // left vertical segment, upward
    let mut f_left = |t: f64| {
        let z = Complex64::new(-1.0, t);
        g_point(basis, z) * phase(z) * Complex64::i()
    };
    let left = adaptive_complex(&mut f_left, CUSP_FLOOR, 1.0, quad_tol, 400);
    // top segment
    let mut f_top = |s: f64| {
        let z = Complex64::new(s, 1.0);
        g_point(basis, z) * phase(z)
    };
    let top = adaptive_complex(&mut f_top, -1.0, 1.0, quad_tol, 600);
    // right vertical segment, downward
    let mut f_right = |t: f64| {
        let z = Complex64::new(1.0, t);
        g_point(basis, z) * phase(z) * Complex64::i()
    };
    let right = adaptive_complex(&mut f_right, CUSP_FLOOR, 1.0, quad_tol, 400);

    let value = 0.5 * (left.value + top.value - right.value);
    let err =
        0.5 * (left.abs_err + top.abs_err + right.abs_err) + cusp_remainder_bound(basis) + value.im.abs();
    if err > tol.max(1e-12) {
        return Err(Error::QuadratureFailure {
            achieved: err,
            requested: tol,
        });
    }
    Ok(value.re)
}

// ---- generating-kernel route --------------------------------------------

/// Kernel of the generating series at a point of the reference domain.
fn kernel_at(sign: Sign, tau: Complex64, z: Complex64) -> Result<Complex64> {
    let (t2t, t3t, _) = theta_all(UpperHalfPoint::new(tau.re, tau.im).expect("tau"));
    let lam_t = (t2t / t3t).powi(4);
    let j_t = lam_t * (1.0 - lam_t) / 16.0;

    let (t2z, t3z, _) = theta_all(UpperHalfPoint::new(z.re, z.im).expect("z"));
    let t3z_c = t3z * t3z * t3z;
    if t3z_c.norm() < 1e-140 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lam_z = (t2z / t3z).powi(4);
    let j_z = lam_z * (1.0 - lam_z) / 16.0;

    let denom_ratio = j_t / j_z; // J(tau)/J(z)
    if (1.0 - denom_ratio).norm() < 1e-8 {
        return Err(Error::KernelPole);
    }
    // 1/(J(z) - J(tau)) = (1/J(z)) * 1/(1 - J(tau)/J(z))
    match sign {
        Sign::Plus => {
            // theta(tau)(1-2 lambda(tau)) theta(z)^3 J(z)/(J(z)-J(tau))
            Ok(t3t * (1.0 - 2.0 * lam_t) * t3z_c / (1.0 - denom_ratio))
        }
        Sign::Minus => {
            // theta(tau) J(tau) theta(z)^3 (1-2 lambda(z))/(J(z)-J(tau))
            let ratio = if lam_z.norm() > 1e60 {
                16.0 * (1.0 / lam_z - 2.0) / (1.0 - lam_z)
            } else {
                (1.0 - 2.0 * lam_z) / j_z
            };
            Ok(t3t * j_t * t3z_c * ratio / (1.0 - denom_ratio))
        }
    }
}

/// Direct integral for the generating series, valid once every translate of
/// `tau` by 2 stays outside the closed unit disc. The contour height dodges
/// the pole orbit of `tau`.
pub(crate) fn kernel_series_direct(sign: Sign, tau: Complex64, x: f64, tol: f64) -> Result<Complex64> {
    let xx = x * x;
    // candidate heights for the horizontal segment
    let im_tau = tau.im;
    let im_inv = im_tau / tau.norm_sqr();
    let mut height = 1.0;
    for cand in [1.0, 1.45, 0.72, 1.9] {
        if (cand - im_tau).abs() > 0.15 && (cand - im_inv).abs() > 0.15 {
            height = cand;
            break;
        }
    }
    let quad_tol = (tol * 0.2).max(1e-15);
    let phase = |z: Complex64| (Complex64::i() * PI * xx * z).exp();
    let mut pole_hit = false;
    {
        let mut eval = |z: Complex64| match kernel_at(sign, tau, z) {
            Ok(v) => v * phase(z),
            Err(_) => {
                pole_hit = true;
                Complex64::new(0.0, 0.0)
            }
        };
        let mut f_left = |t: f64| eval(Complex64::new(-1.0, t)) * Complex64::i();
        let left = adaptive_complex(&mut f_left, CUSP_FLOOR, height, quad_tol, 300);
        let mut f_top = |s: f64| eval(Complex64::new(s, height));
        let top = adaptive_complex(&mut f_top, -1.0, 1.0, quad_tol, 500);
        let mut f_right = |t: f64| eval(Complex64::new(1.0, t)) * Complex64::i();
        let right = adaptive_complex(&mut f_right, CUSP_FLOOR, height, quad_tol, 300);
        if pole_hit {
            return Err(Error::KernelPole);
        }
        Ok(0.5 * (left.value + top.value - right.value))
    }
}

// ---- cached extraction plan ----------------------------------------------
//
// The expensive parts of a generating-series evaluation do not depend on
// the argument x: the reduction word of each grid point and the kernel
// values on the integration path. They are computed once per sign and
// reused for every x.

const PLAN_DEGREE: u32 = 64;
const PLAN_GRID: usize = 8 * PLAN_DEGREE as usize;

/// One functional-equation step: the accumulated prefactor to apply to the
/// elementary terms contributed at this step.
struct PhiStep {
    prefactor: Complex64,
    w: Complex64,
    inv_w: Complex64,
    root: Complex64, // (-i w)^{-1/2}
}

struct TauData {
    steps: Vec<PhiStep>,
    final_factor: Complex64,
    /// path nodes with prebaked kernel value, quadrature weight, direction
    /// and the overall 1/2
    z_nodes: Vec<(Complex64, Complex64)>,
}

struct KernelPlan {
    grid: usize,
    h: f64,
    taus: Vec<TauData>,
}

// 15-point Gauss-Kronrod nodes/weights on [-1, 1] for the fixed path grid
const PATH_XGK: [f64; 15] = [
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];
const PATH_WGK: [f64; 15] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Fixed path nodes for the polyline through `height`: geometrically graded
/// panels on the verticals (the integrand varies on the cusp scale there)
/// and uniform panels on the top.
fn path_nodes(height: f64) -> Vec<(Complex64, Complex64, f64)> {
    // (z, direction * weight, im) triples; the caller adds the kernel value
    let mut nodes = Vec::new();
    let mut push_panel = |a: Complex64, b: Complex64, out: &mut Vec<(Complex64, Complex64, f64)>| {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (xk, wk) in PATH_XGK.iter().zip(PATH_WGK.iter()) {
            let z = mid + half * *xk;
            out.push((z, half * *wk, z.im));
        }
    };
    // left vertical, upward: 20 geometric panels from the cusp floor
    let panels = 20usize;
    let ratio = (height / CUSP_FLOOR).powf(1.0 / panels as f64);
    let mut lo = CUSP_FLOOR;
    for _ in 0..panels {
        let hi = lo * ratio;
        push_panel(
            Complex64::new(-1.0, lo),
            Complex64::new(-1.0, hi),
            &mut nodes,
        );
        lo = hi;
    }
    // top segment
    let top_panels = 48usize;
    for k in 0..top_panels {
        let a = -1.0 + 2.0 * k as f64 / top_panels as f64;
        let b = -1.0 + 2.0 * (k + 1) as f64 / top_panels as f64;
        push_panel(
            Complex64::new(a, height),
            Complex64::new(b, height),
            &mut nodes,
        );
    }
    // right vertical, downward
    let mut hi = height;
    for _ in 0..panels {
        let lo2 = hi / ratio;
        push_panel(Complex64::new(1.0, hi), Complex64::new(1.0, lo2), &mut nodes);
        hi = lo2;
    }
    nodes
}

fn build_tau_data(sign: Sign, t: f64, h: f64) -> Result<TauData> {
    let eps = sign.eigenvalue();
    let mut cur = Complex64::new(t, h);
    let mut acc_factor = Complex64::new(1.0, 0.0);
    let mut steps = Vec::new();
    for _ in 0..100_000 {
        if cur.norm() >= 1.0 - 1e-12 && cur.re.abs() <= 1.0 + 1e-12 {
            // prebake the kernel on the integration path, dodging the pole
            // orbit by the choice of height
            'heights: for height in [1.0, 1.45, 0.72, 1.9] {
                if (height - cur.im).abs() < 0.15
                    || (height - cur.im / cur.norm_sqr()).abs() < 0.15
                {
                    continue;
                }
                let mut z_nodes = Vec::new();
                for (z, w, _) in path_nodes(height) {
                    match kernel_at(sign, cur, z) {
                        Ok(k) => z_nodes.push((z, 0.5 * w * k)),
                        Err(_) => continue 'heights,
                    }
                }
                return Ok(TauData {
                    steps,
                    final_factor: acc_factor,
                    z_nodes,
                });
            }
            return Err(Error::KernelPole);
        }
        let root = (-Complex64::i() * cur).sqrt().inv();
        let inv = -1.0 / cur;
        steps.push(PhiStep {
            prefactor: acc_factor,
            w: cur,
            inv_w: inv,
            root,
        });
        acc_factor *= -eps * root;
        let shift = ((inv.re + 1.0) / 2.0).floor();
        cur = inv - 2.0 * shift;
    }
    Err(Error::ReductionFailure)
}

fn kernel_plan(sign: Sign) -> Result<std::sync::Arc<KernelPlan>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static PLANS: OnceLock<Mutex<HashMap<Sign, Arc<KernelPlan>>>> = OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().expect("plan cache poisoned");
        if let Some(p) = guard.get(&sign) {
            return Ok(p.clone());
        }
    }
    use rayon::prelude::*;
    let grid = PLAN_GRID;
    let h = 1.0 / PLAN_DEGREE as f64;
    // midpoint grid: the exact boundary lines Re = +-1 are 2-cycles of the
    // reduction and must not be sampled
    let taus: Vec<TauData> = (0..grid)
        .into_par_iter()
        .map(|k| {
            let t = -1.0 + (2.0 * k as f64 + 1.0) / grid as f64;
            build_tau_data(sign, t, h)
        })
        .collect::<Result<_>>()?;
    let plan = Arc::new(KernelPlan { grid, h, taus });
    let mut guard = cache.lock().expect("plan cache poisoned");
    Ok(guard.entry(sign).or_insert(plan).clone())
}

fn plan_generating_value(data: &TauData, eps: f64, xx: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for step in &data.steps {
        let phi = (Complex64::i() * PI * step.w * xx).exp()
            + eps * step.root * (Complex64::i() * PI * step.inv_w * xx).exp();
        acc += step.prefactor * phi;
    }
    let mut integral = Complex64::new(0.0, 0.0);
    for (z, kw) in &data.z_nodes {
        integral += kw * (Complex64::i() * PI * xx * z).exp();
    }
    acc + data.final_factor * integral
}

/// Fourier-coefficient extraction of degrees `0..=n_max <= 64` of the
/// generating series from its values on a low uniform grid: the integrand
/// is 2-periodic, so the trapezoid sum is spectrally accurate, and the
/// extraction factor `e^{pi n h}` stays bounded by the height choice.
pub(crate) fn bn_extract_row(sign: Sign, x: f64, n_max: u32, _tol: f64) -> Result<Vec<f64>> {
    if n_max > PLAN_DEGREE {
        return Err(Error::NotImplemented(format!(
            "kernel extraction covers degrees up to {PLAN_DEGREE}, requested {n_max}"
        )));
    }
    let plan = kernel_plan(sign)?;
    let eps = sign.eigenvalue();
    let xx = x * x;
    let values: Vec<Complex64> = plan
        .taus
        .iter()
        .map(|data| plan_generating_value(data, eps, xx))
        .collect();
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in values.iter().enumerate() {
            let t = -1.0 + (2.0 * k as f64 + 1.0) / plan.grid as f64;
            acc += v * (-Complex64::i() * PI * n as f64 * t).exp();
        }
        // periodic trapezoid, then peel off the e^{-pi n h} damping
        let coeff = acc / plan.grid as f64 * (PI * n as f64 * plan.h).exp();
        out.push(coeff.re);
    }
    Ok(out)
}

fn bn_kernel_single(basis: &RVBasis, x: f64, tol: f64) -> Result<f64> {
    let n = basis.n();
    let row = bn_extract_row(basis.sign(), x, n, tol)?;
    Ok(row[n as usize])
}

/// Degree cap for the plain contour: beyond it the `e^{pi n}`-sized
/// integrand exhausts double precision.
const CONTOUR_MAX_N: u32 = 6;

/// Evaluate the basis form at `x` with an error target `tol`.
pub fn bn_eval(basis: &RVBasis, x: f64, tol: f64) -> Result<f64> {
    bn_eval_route(basis, x, tol, EvalRoute::Auto)
}

pub fn bn_eval_route(basis: &RVBasis, x: f64, tol: f64, route: EvalRoute) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    if basis.is_zero() {
        return Ok(0.0);
    }
    let x = x.abs();
    let n = basis.n() as f64;
    match route {
        EvalRoute::Laplace => bn_laplace(basis, x, tol),
        EvalRoute::Contour => bn_contour(basis, x, tol),
        EvalRoute::Kernel => bn_kernel_single(basis, x, tol),
        EvalRoute::Auto => {
            if x * x > n + 0.5 {
                bn_laplace(basis, x, tol)
            } else if basis.n() <= CONTOUR_MAX_N {
                bn_contour(basis, x, tol)
            } else {
                bn_kernel_single(basis, x, tol)
            }
        }
    }
}

/// Even-basis values `(a_n(x), hat a_n(x))` as the half-sum and
/// half-difference of the two eigenfamilies.
pub fn an_eval(n: u32, x: f64, tol: f64) -> Result<(f64, f64)> {
    let plus = basis_cached(n, Sign::Plus)?;
    let minus = basis_cached(n, Sign::Minus)?;
    let bp = bn_eval(&plus, x, tol)?;
    let bm = bn_eval(&minus, x, tol)?;
    Ok(((bp + bm) / 2.0, (bp - bm) / 2.0))
}

/// Row evaluation `(a_j(x), hat a_j(x))` for all `j <= n_max` at one point.
/// Uses the value-side route where it applies and a single shared kernel
/// extraction for the remaining degrees.
pub fn an_eval_row(n_max: u32, x: f64, tol: f64) -> Result<Vec<(f64, f64)>> {
    let xx = x * x;
    let cut = if xx - 0.5 > 0.0 {
        ((xx - 0.5).floor() as i64).clamp(0, n_max as i64) as u32
    } else {
        0
    };
    // degrees above the value-side range come from one extraction per sign
    let (row_p, row_m) = if cut < n_max {
        (
            Some(bn_extract_row(Sign::Plus, x, n_max, tol)?),
            Some(bn_extract_row(Sign::Minus, x, n_max, tol)?),
        )
    } else {
        (None, None)
    };
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for j in 0..=n_max {
        let (bp, bm) = if (j as f64) < xx - 0.5 {
            let plus = basis_cached(j, Sign::Plus)?;
            let minus = basis_cached(j, Sign::Minus)?;
            (
                bn_eval_route(&plus, x, tol, EvalRoute::Laplace)?,
                bn_eval_route(&minus, x, tol, EvalRoute::Laplace)?,
            )
        } else {
            let rp = row_p.as_ref().expect("kernel row present");
            let rm = row_m.as_ref().expect("kernel row present");
            (rp[j as usize], rm[j as usize])
        };
        out.push(((bp + bm) / 2.0, (bp - bm) / 2.0));
    }
    Ok(out)
}
