//! Construction of the weakly holomorphic weight-3/2 forms behind the even
//! interpolation basis at square-root nodes, and the closed-form odd special
//! function.
//!
//! Each form is `theta^3 * P(1/J)` for the `+1` Fourier-eigenvalue family
//! and `theta^3 (1-2 lambda) * P(1/J)` for the `-1` family, with `P` monic of
//! degree `n`. The free coefficients of `P` are fixed so the q-expansion is
//! `q^{-n}` followed by zeros up to the constant term; for the minus family
//! the constant term of `P` must vanish (boundedness at the second cusp), so
//! the constant q-coefficient is forced rather than chosen — it comes out
//! `-2` exactly when `n` is a perfect square and `0` otherwise.

use crate::error::{Error, Result};
use crate::modular::qseries::{
    inv_j_series, one_minus_2lambda_series, theta3_cubed_series, QSeries,
};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }

    /// Fourier eigenvalue attached to the family.
    pub fn eigenvalue(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Constructed basis form: exact q-expansion plus the polynomial
/// coefficients (by power of `1/J`) used for pointwise evaluation.
#[derive(Clone, Debug)]
pub struct RVBasis {
    n: u32,
    sign: Sign,
    g_series: QSeries,
    p_coeffs: Vec<BigRational>,
    p_f64: Vec<f64>,
    g_coeffs_f64: Vec<f64>,
    order: i64,
}

impl RVBasis {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn g_series(&self) -> &QSeries {
        &self.g_series
    }

    /// Coefficients of the monic polynomial `P`, index = power of `1/J`.
    pub fn p_coeffs(&self) -> &[BigRational] {
        &self.p_coeffs
    }

    pub(crate) fn p_f64(&self) -> &[f64] {
        &self.p_f64
    }

    /// q-coefficients of the form as f64, exponents `-n ..= order`.
    pub(crate) fn g_coeffs_f64(&self) -> &[f64] {
        &self.g_coeffs_f64
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.g_series.is_zero()
    }

    /// Constant q-coefficient of the form.
    pub fn constant_term(&self) -> BigRational {
        self.g_series.coeff(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<String> = (-(self.n as i64)..=self.order)
            .map(|e| self.g_series.coeff(e).to_string())
            .collect();
        serde_json::json!({
            "n": self.n,
            "sign": self.sign.as_str(),
            "lead": -(self.n as i64),
            "coeffs": coeffs,
            "order": self.order,
        })
    }
}

/// Build the degree-`n` form of the requested family with a q-expansion
/// tracked through `q^order`. The normalization system is unit triangular:
/// the coefficient at `q^{-k}` of `theta^3 (…) (1/J)^k` is 1, so the
/// polynomial coefficients are fixed by back-substitution from the top.
pub fn gn_construct(n: u32, sign: Sign, order: i64) -> Result<RVBasis> {
    if order < n as i64 + 4 {
        return Err(Error::InvalidArgument(format!(
            "expansion order {order} too small for degree {n}; need at least n + 4"
        )));
    }
    if n == 0 && sign == Sign::Minus {
        // the minus family has no degree-0 member: its value-side integrals
        // diverge for any nonzero candidate, and the generating kernel
        // assigns it the zero form
        return Ok(RVBasis {
            n: 0,
            sign,
            g_series: QSeries::zero(order),
            p_coeffs: vec![],
            p_f64: vec![],
            g_coeffs_f64: vec![],
            order,
        });
    }
    let ni = n as i64;
    // base and inverse-J series exact far enough that every product below
    // is exact through `order`
    let work = order + ni + 2;
    let base = match sign {
        Sign::Plus => theta3_cubed_series(work),
        Sign::Minus => theta3_cubed_series(work).mul(&one_minus_2lambda_series(work)),
    };
    let u = inv_j_series(work);

    // E_k = base * u^k, lead -k, unit leading coefficient
    let mut powers = Vec::with_capacity(n as usize + 1);
    let mut cur = QSeries::one(work);
    for _ in 0..=n {
        powers.push(base.mul(&cur));
        cur = cur.mul(&u);
    }

    let lo = match sign {
        Sign::Plus => 0i64,
        Sign::Minus => 1,
    };
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    coeffs[n as usize] = BigRational::one();
    // impose zero q-coefficients at q^{-k} for k = n-1 down to lo
    for k in (lo..ni).rev() {
        let mut acc = BigRational::zero();
        for m in (k + 1)..=ni {
            let c = &coeffs[m as usize];
            if !c.is_zero() {
                acc += c * powers[m as usize].coeff(-k);
            }
        }
        coeffs[k as usize] = -acc;
    }

    let mut g = QSeries::zero(order);
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            g = g.add(&powers[k].scale(c).truncate(order));
        }
    }

    // re-verify the normalization independently of the solve
    if g.lead() != -ni || g.coeff(-ni) != BigRational::one() {
        return Err(Error::ConstructionFailure(format!(
            "degree-{n} form has wrong leading behaviour"
        )));
    }
    for e in (-ni + 1)..0 {
        if !g.coeff(e).is_zero() {
            return Err(Error::ConstructionFailure(format!(
                "degree-{n} form has nonzero coefficient at exponent {e}"
            )));
        }
    }
    if sign == Sign::Plus && n >= 1 && !g.coeff(0).is_zero() {
        return Err(Error::ConstructionFailure(format!(
            "degree-{n} plus form has nonzero constant term"
        )));
    }

    let p_f64: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let g_coeffs_f64: Vec<f64> = (-ni..=order).map(|e| g.coeff_f64(e)).collect();
    Ok(RVBasis {
        n,
        sign,
        g_series: g,
        p_coeffs: coeffs,
        p_f64,
        g_coeffs_f64,
        order,
    })
}

// evaluation works off cached constructions; the expansion order covers the
// series tail of the value-side integrals
pub(crate) fn eval_order(n: u32) -> i64 {
    n as i64 + 48
}

static CACHE: OnceLock<Mutex<HashMap<(u32, Sign), Arc<RVBasis>>>> = OnceLock::new();

/// Shared construction cache used by the evaluators.
pub fn basis_cached(n: u32, sign: Sign) -> Result<Arc<RVBasis>> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().expect("basis cache poisoned");
        if let Some(b) = guard.get(&(n, sign)) {
            return Ok(b.clone());
        }
    }
    let built = Arc::new(gn_construct(n, sign, eval_order(n))?);
    let mut guard = cache.lock().expect("basis cache poisoned");
    Ok(guard.entry((n, sign)).or_insert(built).clone())
}

/// Odd special function `sin(pi x^2)/sinh(pi x)`: vanishes with its Fourier
/// transform at all square-root nodes, with unit slope at the origin.
pub fn d0_eval(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x.abs() < 1e-4 {
        // x (1 - (pi x)^2 / 6 + ...) to the accuracy floor of f64
        let u = PI * x;
        return x * (1.0 - u * u / 6.0);
    }
    (PI * x * x).sin() / (PI * x).sinh()
}

fn is_square(n: u32) -> bool {
    let r = (n as f64).sqrt().round() as u32;
    r * r == n
}

/// Expected constant q-coefficient of the minus family member of degree `n`.
pub fn minus_constant_term(n: u32) -> i64 {
    if n >= 1 && is_square(n) {
        -2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn degree_zero_plus_is_theta_cubed() {
        let b = gn_construct(0, Sign::Plus, 12).unwrap();
        assert_eq!(b.g_series().coeff(0), int(1));
        assert_eq!(b.g_series().coeff(1), int(6));
        assert_eq!(b.g_series().coeff(2), int(12));
        assert_eq!(b.p_coeffs().len(), 1);
        assert_eq!(b.p_coeffs()[0], int(1));
    }

    #[test]
    fn degree_zero_minus_is_zero() {
        let b = gn_construct(0, Sign::Minus, 12).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn normalization_structure() {
        for n in 1..=6u32 {
            for sign in [Sign::Plus, Sign::Minus] {
                let b = gn_construct(n, sign, n as i64 + 10).unwrap();
                let ni = n as i64;
                assert_eq!(b.g_series().coeff(-ni), int(1), "lead of n={n}");
                for e in (-ni + 1)..0 {
                    assert!(b.g_series().coeff(e).is_zero(), "q^{e} of n={n}");
                }
                match sign {
                    Sign::Plus => assert!(b.g_series().coeff(0).is_zero()),
                    Sign::Minus => assert_eq!(
                        b.constant_term(),
                        int(minus_constant_term(n)),
                        "constant of minus n={n}"
                    ),
                }
            }
        }
    }

    #[test]
    fn minus_constant_is_minus_two_exactly_at_squares() {
        for n in 1..=10u32 {
            let b = gn_construct(n, Sign::Minus, n as i64 + 8).unwrap();
            assert_eq!(b.constant_term(), int(minus_constant_term(n)), "n={n}");
        }
    }

    #[test]
    fn known_polynomial_coefficients() {
        // P_1^+ = u - 30, P_2^+ = u^2 - 54u + 192, P_3^+ = u^3 - 78u^2 + 1212u - 896
        let b1 = gn_construct(1, Sign::Plus, 8).unwrap();
        assert_eq!(b1.p_coeffs(), &[int(-30), int(1)]);
        let b2 = gn_construct(2, Sign::Plus, 8).unwrap();
        assert_eq!(b2.p_coeffs(), &[int(192), int(-54), int(1)]);
        let b3 = gn_construct(3, Sign::Plus, 8).unwrap();
        assert_eq!(b3.p_coeffs(), &[int(-896), int(1212), int(-78), int(1)]);
        // P_1^- = u, P_2^- = u^2 - 22u
        let m1 = gn_construct(1, Sign::Minus, 8).unwrap();
        assert_eq!(m1.p_coeffs(), &[int(0), int(1)]);
        let m2 = gn_construct(2, Sign::Minus, 8).unwrap();
        assert_eq!(m2.p_coeffs(), &[int(0), int(-22), int(1)]);
    }

    #[test]
    fn generating_kernel_coefficients_agree() {
        // independent oracle: the polynomial coefficients are also the
        // q-expansion coefficients of theta (1-2 lambda) J^m (plus family)
        // and theta J^m (minus family, m >= 1)
        use crate::modular::qseries::{j_series, lambda_series, theta3_series};
        let order = 14i64;
        let theta = theta3_series(order);
        let lam = lambda_series(order);
        let two = int(2);
        let theta_oml = theta.mul(&QSeries::one(order).sub(&lam.scale(&two)));
        let j = j_series(order);
        for n in 1..=6u32 {
            let plus = gn_construct(n, Sign::Plus, n as i64 + 8).unwrap();
            let minus = gn_construct(n, Sign::Minus, n as i64 + 8).unwrap();
            let mut cur_plus = theta_oml.clone();
            let mut cur_minus = theta.mul(&j);
            for m in 0..=n as usize {
                assert_eq!(
                    plus.p_coeffs()[m],
                    cur_plus.coeff(n as i64),
                    "plus n={n} m={m}"
                );
                cur_plus = cur_plus.mul(&j).truncate(order);
                if m >= 1 {
                    assert_eq!(
                        minus.p_coeffs()[m],
                        cur_minus.coeff(n as i64),
                        "minus n={n} m={m}"
                    );
                    cur_minus = cur_minus.mul(&j).truncate(order);
                }
            }
        }
    }

    #[test]
    fn order_precondition() {
        assert!(matches!(
            gn_construct(4, Sign::Plus, 6),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn d0_examples() {
        assert!(d0_eval(std::f64::consts::SQRT_2).abs() < 1e-15);
        // unit slope at the origin
        for &x in &[1e-6, 1e-5, 1e-3] {
            assert!((d0_eval(x) / x - 1.0).abs() < 1e-5);
        }
        let expected = (0.5f64.sqrt()) / (std::f64::consts::PI / 2.0).sinh();
        assert!((d0_eval(0.5) - expected).abs() < 1e-15);
        assert_eq!(d0_eval(0.0), 0.0);
    }
}
