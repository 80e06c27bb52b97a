//! Sequence containers, index windows, weighted norms, and perturbation
//! profiles shared by every other module.
//!
//! All values are immutable after construction and safe to share across
//! threads.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Inclusive range of integer indices, either a window into `Z` or into `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WindowKind {
    #[serde(rename = "two_sided")]
    TwoSided,
    #[serde(rename = "one_sided")]
    OneSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexWindow {
    lo: i64,
    hi: i64,
    kind: WindowKind,
}

impl IndexWindow {
    pub fn two_sided(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "window bounds out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            lo,
            hi,
            kind: WindowKind::TwoSided,
        })
    }

    /// One-sided windows always start at 0.
    pub fn one_sided(hi: i64) -> Result<Self> {
        if hi < 0 {
            return Err(Error::InvalidArgument(format!(
                "one-sided window needs hi >= 0, got {hi}"
            )));
        }
        Ok(Self {
            lo: 0,
            hi,
            kind: WindowKind::OneSided,
        })
    }

    /// Symmetric two-sided window `[-half, half]`.
    pub fn symmetric(half: i64) -> Result<Self> {
        Self::two_sided(-half, half)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false // lo <= hi is enforced at construction
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    /// Offset of index `n` inside the window's storage order.
    pub fn offset(&self, n: i64) -> Option<usize> {
        self.contains(n).then(|| (n - self.lo) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Finitely supported real sequence stored over an index window. Reads
/// outside the window yield 0, mirroring truncation of an `l^2` sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSequence {
    window: IndexWindow,
    values: Vec<f64>,
}

impl RealSequence {
    pub fn new(window: IndexWindow, values: Vec<f64>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::InvalidArgument(format!(
                "value count {} does not match window length {}",
                values.len(),
                window.len()
            )));
        }
        Ok(Self { window, values })
    }

    pub fn zeros(window: IndexWindow) -> Self {
        Self {
            values: vec![0.0; window.len()],
            window,
        }
    }

    /// Unit coordinate sequence `e_at`.
    pub fn unit(window: IndexWindow, at: i64) -> Result<Self> {
        let mut s = Self::zeros(window);
        let off = window
            .offset(at)
            .ok_or_else(|| Error::InvalidArgument(format!("index {at} outside window")))?;
        s.values[off] = 1.0;
        Ok(s)
    }

    pub fn from_fn(window: IndexWindow, mut f: impl FnMut(i64) -> f64) -> Self {
        let values = window.iter().map(&mut f).collect();
        Self { window, values }
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at index `n`, zero outside the window.
    pub fn get(&self, n: i64) -> f64 {
        self.window.offset(n).map_or(0.0, |o| self.values[o])
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Copy onto a new window: entries are kept where both windows overlap
    /// and zero elsewhere. Idempotent for a fixed target window.
    pub fn restrict(&self, w: IndexWindow) -> RealSequence {
        RealSequence::from_fn(w, |n| self.get(n))
    }
}

/// Pair of one-sided sequences measured in the polynomially weighted norm
/// `||(x, y)|| = (sum (1+n)^{2s} x_n^2 + sum (1+n)^{2s} y_n^2)^{1/2}`.
#[derive(Clone, Debug)]
pub struct WeightedSeqPair {
    x: RealSequence,
    y: RealSequence,
    s: f64,
}

impl WeightedSeqPair {
    pub fn new(x: RealSequence, y: RealSequence, s: f64) -> Result<Self> {
        if x.window() != y.window() {
            return Err(Error::InvalidArgument(
                "weighted pair components must share a window".into(),
            ));
        }
        if x.window().kind() != WindowKind::OneSided {
            return Err(Error::InvalidArgument(
                "weighted pairs live over one-sided windows".into(),
            ));
        }
        Ok(Self { x, y, s })
    }

    pub fn x(&self) -> &RealSequence {
        &self.x
    }

    pub fn y(&self) -> &RealSequence {
        &self.y
    }

    pub fn weight_exponent(&self) -> f64 {
        self.s
    }
}

/// Weighted norm of the pair. The weight `(1+n)^s` is used rather than `n^s`
/// so the index 0 carries weight 1 instead of degenerating.
pub fn weighted_norm(p: &WeightedSeqPair) -> f64 {
    let mut acc = 0.0;
    for (n, (&xv, &yv)) in p.x.window().iter().zip(p.x.values().iter().zip(p.y.values())) {
        let w = (1.0 + n as f64).powf(2.0 * p.s);
        acc += w * (xv * xv + yv * yv);
    }
    acc.sqrt()
}

/// Decay law a perturbation profile is generated from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    /// `eps_n = (-1)^n * level`: the alternating sign pattern stresses the
    /// worst case for the sampling operators. Override with
    /// [`PerturbationProfile::from_eps`] when a specific pattern is needed.
    Constant { level: f64 },
    /// `|eps_n| <= amplitude * (1+n)^{-exponent}`, realized entrywise with
    /// equality (positive sign).
    PowerLaw { amplitude: f64, exponent: f64 },
}

/// Jitter sequence `eps_n` over an index window together with its sup-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationProfile {
    window: IndexWindow,
    eps: Vec<f64>,
    sup: f64,
    decay_class: Option<DecayClass>,
}

impl PerturbationProfile {
    /// Deterministic profile generation. With `sqrt_node_use` the profile is
    /// additionally validated for square-root interpolation nodes, which
    /// require `eps_0 = 0` and `eps_n` strictly inside `(-1/2, 1/2)`.
    pub fn make(class: DecayClass, window: IndexWindow, sqrt_node_use: bool) -> Result<Self> {
        let amplitude = match class {
            DecayClass::Constant { level } => level,
            DecayClass::PowerLaw { amplitude, .. } => amplitude,
        };
        if amplitude < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "profile amplitude must be nonnegative, got {amplitude}"
            )));
        }
        let eps: Vec<f64> = window
            .iter()
            .map(|n| match class {
                DecayClass::Constant { level } => {
                    if n.rem_euclid(2) == 0 {
                        level
                    } else {
                        -level
                    }
                }
                DecayClass::PowerLaw {
                    amplitude,
                    exponent,
                } => {
                    if window.kind() == WindowKind::OneSided && n == 0 {
                        0.0
                    } else {
                        amplitude * (1.0 + n.unsigned_abs() as f64).powf(-exponent)
                    }
                }
            })
            .collect();
        let profile = Self::from_parts(window, eps, Some(class));
        if sqrt_node_use {
            profile.ensure_sqrt_nodes()?;
        }
        Ok(profile)
    }

    /// Explicit jitter values.
    pub fn from_eps(window: IndexWindow, eps: Vec<f64>) -> Result<Self> {
        if eps.len() != window.len() {
            return Err(Error::InvalidArgument(format!(
                "eps count {} does not match window length {}",
                eps.len(),
                window.len()
            )));
        }
        Ok(Self::from_parts(window, eps, None))
    }

    pub fn zero(window: IndexWindow) -> Self {
        Self::from_parts(window, vec![0.0; window.len()], None)
    }

    fn from_parts(window: IndexWindow, eps: Vec<f64>, decay_class: Option<DecayClass>) -> Self {
        let sup = eps.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        Self {
            window,
            eps,
            sup,
            decay_class,
        }
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    /// Sup-norm `L = sup |eps_n|` over the window.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    pub fn decay_class(&self) -> Option<DecayClass> {
        self.decay_class
    }

    /// Jitter at index `n`, zero outside the window.
    pub fn eps(&self, n: i64) -> f64 {
        self.window.offset(n).map_or(0.0, |o| self.eps[o])
    }

    pub fn eps_values(&self) -> &[f64] {
        &self.eps
    }

    /// Square-root node constraints: `eps_0 = 0` (strict, when index 0 is in
    /// the window) and every `eps_n` strictly inside `(-1/2, 1/2)`.
    pub fn ensure_sqrt_nodes(&self) -> Result<()> {
        if self.window.contains(0) && self.eps(0) != 0.0 {
            return Err(Error::RangeViolation(format!(
                "square-root nodes require eps_0 = 0, got {}",
                self.eps(0)
            )));
        }
        for (n, &e) in self.window.iter().zip(&self.eps) {
            if e.abs() >= 0.5 {
                return Err(Error::RangeViolation(format!(
                    "eps_{n} = {e} outside (-1/2, 1/2)"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self.window.kind() {
            WindowKind::TwoSided => "two_sided",
            WindowKind::OneSided => "one_sided",
        };
        serde_json::json!({
            "kind": kind,
            "lo": self.window.lo(),
            "hi": self.window.hi(),
            "eps": self.eps,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("profile json: {m}"));
        let kind = v["kind"].as_str().ok_or_else(|| bad("missing kind"))?;
        let lo = v["lo"].as_i64().ok_or_else(|| bad("missing lo"))?;
        let hi = v["hi"].as_i64().ok_or_else(|| bad("missing hi"))?;
        let eps: Vec<f64> = v["eps"]
            .as_array()
            .ok_or_else(|| bad("missing eps"))?
            .iter()
            .map(|x| x.as_f64().ok_or_else(|| bad("non-numeric eps entry")))
            .collect::<Result<_>>()?;
        let window = match kind {
            "two_sided" => IndexWindow::two_sided(lo, hi)?,
            "one_sided" if lo == 0 => IndexWindow::one_sided(hi)?,
            "one_sided" => return Err(bad("one_sided window must start at 0")),
            _ => return Err(bad("unknown kind")),
        };
        Self::from_eps(window, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn window_basics() {
        let w = IndexWindow::two_sided(-10, 10).unwrap();
        assert_eq!(w.len(), 21);
        assert_eq!(w.offset(-10), Some(0));
        assert_eq!(w.offset(10), Some(20));
        assert_eq!(w.offset(11), None);
        assert!(IndexWindow::two_sided(3, 2).is_err());
        assert!(IndexWindow::one_sided(-1).is_err());
    }

    #[test]
    fn constant_profile_zero_amplitude() {
        let w = IndexWindow::two_sided(-10, 10).unwrap();
        let p = PerturbationProfile::make(DecayClass::Constant { level: 0.0 }, w, false).unwrap();
        assert!(p.eps_values().iter().all(|&e| e == 0.0));
        assert_eq!(p.sup(), 0.0);
    }

    #[test]
    fn power_law_profile_values() {
        let w = IndexWindow::one_sided(64).unwrap();
        let p = PerturbationProfile::make(
            DecayClass::PowerLaw {
                amplitude: 0.01,
                exponent: 1.25,
            },
            w,
            true,
        )
        .unwrap();
        assert_eq!(p.eps(0), 0.0);
        let expected = 0.01 * 2f64.powf(-1.25);
        assert!((p.eps(1) - expected).abs() < 1e-15);
        // the generated profile saturates its decay law exactly
        for n in 1..=64 {
            let bound = 0.01 * (1.0 + n as f64).powf(-1.25);
            assert!(p.eps(n) <= bound + 1e-15);
        }
    }

    #[test]
    fn sqrt_node_range_violation() {
        let w = IndexWindow::one_sided(8).unwrap();
        let err = PerturbationProfile::make(DecayClass::Constant { level: 0.6 }, w, true)
            .expect_err("0.6 is outside (-1/2, 1/2)");
        assert!(matches!(err, Error::RangeViolation(_)));
    }

    #[test]
    fn negative_amplitude_rejected() {
        let w = IndexWindow::one_sided(4).unwrap();
        let err = PerturbationProfile::make(DecayClass::Constant { level: -0.1 }, w, false)
            .expect_err("negative amplitude");
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn alternating_sign_pattern() {
        let w = IndexWindow::two_sided(-3, 3).unwrap();
        let p = PerturbationProfile::make(DecayClass::Constant { level: 0.2 }, w, false).unwrap();
        assert_eq!(p.eps(0), 0.2);
        assert_eq!(p.eps(1), -0.2);
        assert_eq!(p.eps(-1), -0.2);
        assert_eq!(p.eps(2), 0.2);
    }

    #[test]
    fn weighted_norm_examples() {
        let w = IndexWindow::one_sided(3).unwrap();
        let zero = WeightedSeqPair::new(RealSequence::zeros(w), RealSequence::zeros(w), 1.0).unwrap();
        assert_eq!(weighted_norm(&zero), 0.0);

        let e0 = RealSequence::unit(w, 0).unwrap();
        let p = WeightedSeqPair::new(e0, RealSequence::zeros(w), 0.0).unwrap();
        assert!((weighted_norm(&p) - 1.0).abs() < 1e-15);

        let e1 = RealSequence::unit(w, 1).unwrap();
        let p = WeightedSeqPair::new(e1, RealSequence::zeros(w), 1.0).unwrap();
        assert!((weighted_norm(&p) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn restrict_examples() {
        let w = IndexWindow::two_sided(-5, 5).unwrap();
        let s = RealSequence::from_fn(w, |n| n as f64);
        assert_eq!(s.restrict(w), s);

        let disjoint = IndexWindow::two_sided(10, 12).unwrap();
        assert!(s.restrict(disjoint).values().iter().all(|&v| v == 0.0));

        let mid = IndexWindow::two_sided(0, 2).unwrap();
        assert_eq!(s.restrict(mid).values(), &[0.0, 1.0, 2.0]);
    }

    #[test]
    fn profile_json_round_trip() {
        let w = IndexWindow::one_sided(4).unwrap();
        let p = PerturbationProfile::make(
            DecayClass::PowerLaw {
                amplitude: 0.02,
                exponent: 1.5,
            },
            w,
            false,
        )
        .unwrap();
        let j = p.to_json();
        let q = PerturbationProfile::from_json(&j).unwrap();
        assert_eq!(p.eps_values(), q.eps_values());
        assert_eq!(p.window(), q.window());
    }

    proptest! {
        #[test]
        fn weighted_norm_triangle_and_homogeneity(
            xs in proptest::collection::vec(-100.0f64..100.0, 6),
            ys in proptest::collection::vec(-100.0f64..100.0, 6),
            us in proptest::collection::vec(-100.0f64..100.0, 6),
            vs in proptest::collection::vec(-100.0f64..100.0, 6),
            s in 0.0f64..4.0,
            c in -10.0f64..10.0,
        ) {
            let w = IndexWindow::one_sided(5).unwrap();
            let mk = |a: &[f64], b: &[f64]| WeightedSeqPair::new(
                RealSequence::new(w, a.to_vec()).unwrap(),
                RealSequence::new(w, b.to_vec()).unwrap(),
                s,
            ).unwrap();
            let p = mk(&xs, &ys);
            let q = mk(&us, &vs);
            let sum = mk(
                &xs.iter().zip(&us).map(|(a, b)| a + b).collect::<Vec<_>>(),
                &ys.iter().zip(&vs).map(|(a, b)| a + b).collect::<Vec<_>>(),
            );
            let (np, nq, ns) = (weighted_norm(&p), weighted_norm(&q), weighted_norm(&sum));
            prop_assert!(ns <= np + nq + 1e-9 * (1.0 + np + nq));

            let scaled = mk(
                &xs.iter().map(|a| c * a).collect::<Vec<_>>(),
                &ys.iter().map(|a| c * a).collect::<Vec<_>>(),
            );
            prop_assert!((weighted_norm(&scaled) - c.abs() * np).abs() <= 1e-9 * (1.0 + np));
        }

        #[test]
        fn power_law_sup_bound_is_exact(
            delta in 0.0f64..0.4,
            p_exp in 0.25f64..3.0,
            hi in 1i64..80,
        ) {
            let w = IndexWindow::one_sided(hi).unwrap();
            let prof = PerturbationProfile::make(
                DecayClass::PowerLaw { amplitude: delta, exponent: p_exp },
                w,
                false,
            ).unwrap();
            let sup_scaled = w.iter()
                .map(|n| prof.eps(n).abs() * (1.0 + n as f64).powf(p_exp))
                .fold(0.0f64, f64::max);
            prop_assert!(sup_scaled <= delta + 1e-12);
        }

        #[test]
        fn restrict_idempotent(
            vals in proptest::collection::vec(-5.0f64..5.0, 11),
            lo in -6i64..0,
            hi in 0i64..6,
        ) {
            let w = IndexWindow::two_sided(-5, 5).unwrap();
            let s = RealSequence::new(w, vals).unwrap();
            let target = IndexWindow::two_sided(lo, hi).unwrap();
            let once = s.restrict(target);
            let twice = once.restrict(target);
            prop_assert_eq!(once, twice);
        }
    }
}
