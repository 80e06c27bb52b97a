//! Truncated formal expansions in the nome `q = e^{i pi z}`, with exact
//! rational coefficients and possibly negative leading exponent.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact Laurent-style truncation: coefficients for exponents
/// `lead ..= order`. The leading coefficient is nonzero unless the series is
/// identically zero; arithmetic tracks the order through which the result is
/// exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    lead: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

impl QSeries {
    pub fn zero(order: i64) -> Self {
        Self {
            lead: 0,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    pub fn monomial(c: BigRational, exp: i64, order: i64) -> Self {
        Self::from_parts(exp, vec![c], order)
    }

    /// Build from integer coefficients starting at exponent `lead`.
    pub fn from_integer_coeffs(lead: i64, coeffs: &[i64], order: i64) -> Self {
        let rat: Vec<BigRational> = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Self::from_parts(lead, rat, order)
    }

    pub fn from_parts(lead: i64, coeffs: Vec<BigRational>, order: i64) -> Self {
        let mut s = Self {
            lead,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        // strip zero leading coefficients and anything above the order
        let keep = (self.order - self.lead + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        let nz = self.coeffs.iter().position(|c| !c.is_zero());
        match nz {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.lead = 0;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        if exp < self.lead {
            return BigRational::zero();
        }
        let idx = (exp - self.lead) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_f64(&self, exp: i64) -> f64 {
        self.coeff(exp).to_f64().unwrap_or(f64::NAN)
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut s = self.clone();
        s.order = s.order.min(order);
        s.normalize();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return other.truncate(order);
        }
        if other.is_zero() {
            return self.truncate(order);
        }
        let lead = self.lead.min(other.lead);
        let hi = order;
        let mut coeffs = Vec::with_capacity((hi - lead + 1).max(0) as usize);
        for e in lead..=hi {
            coeffs.push(self.coeff(e) + other.coeff(e));
        }
        Self::from_parts(lead, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(
            self.lead,
            self.coeffs.iter().map(|c| -c.clone()).collect(),
            self.order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Self::from_parts(
            self.lead,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.order,
        )
    }

    /// Product, exact through `min(a.order + b.lead, b.order + a.lead)`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order.min(other.order));
        }
        let order = (self.order + other.lead).min(other.order + self.lead);
        let lead = self.lead + other.lead;
        let len = (order - lead + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lead + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.lead + j as i64;
                if e > order {
                    break;
                }
                let idx = (e - lead) as usize;
                coeffs[idx] += a * b;
            }
        }
        Self::from_parts(lead, coeffs, order)
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("cannot invert the zero series".into()));
        }
        // a = q^lead * A with A(0) = a0 != 0; invert A by recursion
        let a0 = self.coeffs[0].clone();
        let deg = (self.order - self.lead).max(0) as usize;
        let mut inv = vec![BigRational::zero(); deg + 1];
        inv[0] = BigRational::one() / &a0;
        for k in 1..=deg {
            let mut s = BigRational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &inv[k - j];
                }
            }
            inv[k] = -s / &a0;
        }
        Ok(Self::from_parts(-self.lead, inv, self.order - 2 * self.lead))
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one(self.order);
        }
        // plain iterated product keeps the order bookkeeping exact
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `q -> c q` (scalar composition): multiplies the
    /// coefficient of `q^e` by `c^e`.
    pub fn compose_scalar(&self, c: &BigRational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let e = self.lead + i as i64;
                x * pow_rational(c, e)
            })
            .collect();
        Self::from_parts(self.lead, coeffs, self.order)
    }

    /// Numerical evaluation at a complex nome. Coefficients are converted to
    /// f64; intended for tail sums where `|q|` is well inside the disc.
    pub fn eval(&self, q: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        // Horner in ascending powers from the lead
        for c in self.coeffs.iter().rev() {
            acc = acc * q + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc * q.powi(self.lead as i32)
    }

    /// Largest absolute coefficient, as f64 (for crude tail bounds).
    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

fn pow_rational(c: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e > 0 {
        c.clone()
    } else {
        BigRational::one() / c
    };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

// ---- classical series builders ------------------------------------------

/// `theta(z) = 1 + 2 sum_{n>=1} q^{n^2}` through `q^order`.
pub fn theta3_series(order: i64) -> QSeries {
    let mut coeffs = vec![BigRational::zero(); (order + 1).max(1) as usize];
    coeffs[0] = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut n = 1i64;
    while n * n <= order {
        coeffs[(n * n) as usize] = two.clone();
        n += 1;
    }
    QSeries::from_parts(0, coeffs, order)
}

/// Fourth power of the half-integer theta: `16 q (sum_{n>=0} q^{n(n+1)})^4`.
pub fn theta2_pow4_series(order: i64) -> QSeries {
    let mut core = vec![BigRational::zero(); (order + 1).max(1) as usize];
    let mut n = 0i64;
    while n * (n + 1) <= order {
        core[(n * (n + 1)) as usize] += BigRational::one();
        n += 1;
    }
    let core = QSeries::from_parts(0, core, order);
    let c2 = core.mul(&core);
    let c4 = c2.mul(&c2);
    c4.mul(&QSeries::monomial(
        BigRational::from_integer(BigInt::from(16)),
        1,
        order + 1,
    ))
}

/// The lambda invariant as a q-series: `theta2^4 / theta3^4`
/// `= 16q - 128q^2 + 704q^3 - ...`.
pub fn lambda_series(order: i64) -> QSeries {
    let t3 = theta3_series(order);
    let t3_4 = t3.pow(4);
    theta2_pow4_series(order + 1).mul(&t3_4.invert().expect("theta^4 starts at 1"))
}

/// `J = lambda (1 - lambda) / 16 = q - 24 q^2 + 300 q^3 - ...`.
pub fn j_series(order: i64) -> QSeries {
    let lam = lambda_series(order + 1);
    let one = QSeries::one(order + 1);
    let sixteenth = BigRational::new(BigInt::one(), BigInt::from(16));
    lam.mul(&one.sub(&lam)).scale(&sixteenth).truncate(order)
}

/// `1/J`, a series with leading exponent -1.
pub fn inv_j_series(order: i64) -> QSeries {
    j_series(order + 2).invert().expect("J starts at q")
}

/// `theta^3`.
pub fn theta3_cubed_series(order: i64) -> QSeries {
    let t = theta3_series(order);
    t.mul(&t).mul(&t)
}

/// `1 - 2 lambda`.
pub fn one_minus_2lambda_series(order: i64) -> QSeries {
    let two = BigRational::from_integer(BigInt::from(2));
    QSeries::one(order).sub(&lambda_series(order).scale(&two))
}
