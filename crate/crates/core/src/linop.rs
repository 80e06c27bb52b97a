//! Truncated dense operators on sequence spaces: norm estimation,
//! Hilbert–Schmidt and Schur bounds, Neumann-series invertibility
//! certificates, and direct solves.

use crate::error::{Error, Result};
use crate::seqspace::{IndexWindow, RealSequence};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;

/// Dense finite window of an infinite matrix. Entries are stored row-major
/// by window offset; `apply` treats the input as zero outside the column
/// window.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    row_window: IndexWindow,
    col_window: IndexWindow,
    entries: Vec<f64>,
}

impl TruncatedOperator {
    pub fn new(row_window: IndexWindow, col_window: IndexWindow, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != row_window.len() * col_window.len() {
            return Err(Error::InvalidArgument(format!(
                "entry count {} does not match {}x{} window",
                entries.len(),
                row_window.len(),
                col_window.len()
            )));
        }
        Ok(Self {
            row_window,
            col_window,
            entries,
        })
    }

    /// Assemble from an entry function over window indices. Rows are filled
    /// in parallel.
    pub fn from_fn(
        row_window: IndexWindow,
        col_window: IndexWindow,
        f: impl Fn(i64, i64) -> f64 + Sync,
    ) -> Self {
        let cols: Vec<i64> = col_window.iter().collect();
        let ncols = cols.len();
        let mut entries = vec![0.0; row_window.len() * ncols];
        let rows: Vec<i64> = row_window.iter().collect();
        entries
            .par_chunks_mut(ncols)
            .zip(rows.par_iter())
            .for_each(|(chunk, &n)| {
                for (c, &k) in chunk.iter_mut().zip(&cols) {
                    *c = f(n, k);
                }
            });
        Self {
            row_window,
            col_window,
            entries,
        }
    }

    pub fn identity(w: IndexWindow) -> Self {
        Self::from_fn(w, w, |n, k| if n == k { 1.0 } else { 0.0 })
    }

    pub fn zero(row_window: IndexWindow, col_window: IndexWindow) -> Self {
        Self {
            entries: vec![0.0; row_window.len() * col_window.len()],
            row_window,
            col_window,
        }
    }

    pub fn row_window(&self) -> IndexWindow {
        self.row_window
    }

    pub fn col_window(&self) -> IndexWindow {
        self.col_window
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, n: i64, k: i64) -> f64 {
        match (self.row_window.offset(n), self.col_window.offset(k)) {
            (Some(r), Some(c)) => self.entries[r * self.col_window.len() + c],
            _ => 0.0,
        }
    }

    pub fn is_square(&self) -> bool {
        self.row_window == self.col_window
    }

    /// Matrix-vector product on the row window. Input entries outside the
    /// column window are treated as zero.
    pub fn apply(&self, a: &RealSequence) -> RealSequence {
        let x: Vec<f64> = self.col_window.iter().map(|k| a.get(k)).collect();
        let ncols = self.col_window.len();
        let mut out = vec![0.0; self.row_window.len()];
        out.par_iter_mut()
            .zip(self.entries.par_chunks(ncols))
            .for_each(|(o, row)| {
                *o = row.iter().zip(&x).map(|(m, v)| m * v).sum();
            });
        RealSequence::new(self.row_window, out).expect("window sizes agree")
    }

    fn apply_raw(&self, x: &[f64], out: &mut [f64]) {
        let ncols = self.col_window.len();
        out.par_iter_mut()
            .zip(self.entries.par_chunks(ncols))
            .for_each(|(o, row)| {
                *o = row.iter().zip(x).map(|(m, v)| m * v).sum();
            });
    }

    fn apply_transpose_raw(&self, x: &[f64], out: &mut [f64]) {
        let ncols = self.col_window.len();
        out.par_iter_mut().enumerate().for_each(|(c, o)| {
            let mut acc = 0.0;
            for (r, &xv) in x.iter().enumerate() {
                acc += self.entries[r * ncols + c] * xv;
            }
            *o = acc;
        });
    }

    /// CSV export as `row,col,value` triples (window indices, not offsets).
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "row,col,value")?;
        let ncols = self.col_window.len();
        for (r, n) in self.row_window.iter().enumerate() {
            for (c, k) in self.col_window.iter().enumerate() {
                writeln!(w, "{},{},{:.17e}", n, k, self.entries[r * ncols + c])?;
            }
        }
        Ok(())
    }
}

/// Stack a 2x2 block of equal-size square operators into one operator on the
/// doubled one-sided window `[0, 2m-1]`. Block `(i, j)` lands at row offset
/// `i*m`, column offset `j*m`.
pub fn assemble_block2(
    b11: &TruncatedOperator,
    b12: &TruncatedOperator,
    b21: &TruncatedOperator,
    b22: &TruncatedOperator,
) -> Result<TruncatedOperator> {
    let m = b11.row_window().len();
    for b in [b11, b12, b21, b22] {
        if b.row_window().len() != m || b.col_window().len() != m {
            return Err(Error::InvalidArgument(
                "block pieces must share one square size".into(),
            ));
        }
    }
    let w = IndexWindow::one_sided(2 * m as i64 - 1)?;
    let mut entries = vec![0.0; 4 * m * m];
    let big = 2 * m;
    for r in 0..m {
        for c in 0..m {
            entries[r * big + c] = b11.entries[r * m + c];
            entries[r * big + (m + c)] = b12.entries[r * m + c];
            entries[(m + r) * big + c] = b21.entries[r * m + c];
            entries[(m + r) * big + (m + c)] = b22.entries[r * m + c];
        }
    }
    TruncatedOperator::new(w, w, entries)
}

/// Interleave a pair of sequences over the same window into the stacked
/// coordinates used by [`assemble_block2`].
pub fn pack_pair(x: &RealSequence, y: &RealSequence) -> Result<RealSequence> {
    if x.window() != y.window() {
        return Err(Error::InvalidArgument("pair windows differ".into()));
    }
    let m = x.window().len();
    let w = IndexWindow::one_sided(2 * m as i64 - 1)?;
    let mut values = Vec::with_capacity(2 * m);
    values.extend_from_slice(x.values());
    values.extend_from_slice(y.values());
    RealSequence::new(w, values)
}

/// Inverse of [`pack_pair`]: split stacked coordinates back onto `window`.
pub fn unpack_pair(stacked: &RealSequence, window: IndexWindow) -> Result<(RealSequence, RealSequence)> {
    let m = window.len();
    if stacked.values().len() != 2 * m {
        return Err(Error::InvalidArgument("stacked length mismatch".into()));
    }
    let x = RealSequence::new(window, stacked.values()[..m].to_vec())?;
    let y = RealSequence::new(window, stacked.values()[m..].to_vec())?;
    Ok((x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertMethod {
    ClosedForm,
    PowerIteration,
    Schur,
    HilbertSchmidt,
}

impl CertMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertMethod::ClosedForm => "closed_form",
            CertMethod::PowerIteration => "power_iteration",
            CertMethod::Schur => "schur",
            CertMethod::HilbertSchmidt => "hilbert_schmidt",
        }
    }
}

/// A bound on an operator norm tagged with the method that produced it.
#[derive(Clone, Debug)]
pub struct NormCertificate {
    pub method: CertMethod,
    pub bound: f64,
    pub detail: BTreeMap<String, serde_json::Value>,
}

impl NormCertificate {
    pub fn closed_form(bound: f64) -> Self {
        Self {
            method: CertMethod::ClosedForm,
            bound,
            detail: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("method".into(), self.method.as_str().into());
        map.insert("bound".into(), self.bound.into());
        for (k, v) in &self.detail {
            map.insert(k.clone(), v.clone());
        }
        serde_json::Value::Object(map)
    }
}

/// Largest-singular-value estimate by power iteration on `A^T A`, started
/// from the all-ones vector so runs are reproducible. The returned bound is
/// a Rayleigh quotient, hence always a valid lower bound on the true norm;
/// convergence is declared when successive estimates move less than `tol`.
pub fn op_norm_power(a: &TruncatedOperator, tol: f64, max_iter: usize) -> Result<NormCertificate> {
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let n = a.col_window().len();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut av = vec![0.0; a.row_window().len()];
    let mut u = vec![0.0; n];
    let mut sigma = 0.0f64;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        a.apply_raw(&v, &mut av);
        a.apply_transpose_raw(&av, &mut u);
        // Rayleigh quotient for A^T A at the unit vector v
        let ssq: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
        let new_sigma = ssq.max(0.0).sqrt();
        residual = (new_sigma - sigma).abs();
        sigma = new_sigma;
        let nrm: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm == 0.0 {
            // zero operator
            let mut detail = BTreeMap::new();
            detail.insert("iterations".into(), serde_json::json!(it));
            detail.insert("residual".into(), serde_json::json!(0.0));
            return Ok(NormCertificate {
                method: CertMethod::PowerIteration,
                bound: 0.0,
                detail,
            });
        }
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi = ui / nrm;
        }
        if it >= 2 && residual <= tol * sigma.max(1.0) {
            let mut detail = BTreeMap::new();
            detail.insert("iterations".into(), serde_json::json!(it));
            detail.insert("residual".into(), serde_json::json!(residual));
            return Ok(NormCertificate {
                method: CertMethod::PowerIteration,
                bound: sigma,
                detail,
            });
        }
    }
    Err(Error::ConvergenceFailure {
        best: sigma,
        iterations: max_iter,
        residual,
    })
}

/// Hilbert–Schmidt (Frobenius) norm: the root sum of squared entries. It
/// dominates the operator norm.
pub fn hs_norm(a: &TruncatedOperator) -> NormCertificate {
    let bound = a.entries.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut detail = BTreeMap::new();
    detail.insert(
        "entry_count".into(),
        serde_json::json!(a.entries.len()),
    );
    NormCertificate {
        method: CertMethod::HilbertSchmidt,
        bound,
        detail,
    }
}

/// Two-weight row/column-sum test: with positive weights `p`, `q`, compute
/// `lambda = max_j (sum_i |a_ij| q_i) / p_j` and
/// `mu = max_i (sum_j |a_ij| p_j) / q_i` over the truncation; the operator
/// norm is at most `sqrt(mu * lambda)`.
pub fn schur_bound(
    a: &TruncatedOperator,
    p: &RealSequence,
    q: &RealSequence,
) -> Result<NormCertificate> {
    for (w, s, name) in [
        (a.col_window(), p, "p"),
        (a.row_window(), q, "q"),
    ] {
        for n in w.iter() {
            if s.get(n) <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "schur weight {name}[{n}] must be strictly positive"
                )));
            }
        }
    }
    let ncols = a.col_window.len();
    let mut lambda = 0.0f64;
    let mut lambda_at = 0i64;
    for (c, j) in a.col_window.iter().enumerate() {
        let mut s = 0.0;
        for (r, i) in a.row_window.iter().enumerate() {
            s += a.entries[r * ncols + c].abs() * q.get(i);
        }
        let ratio = s / p.get(j);
        if ratio > lambda {
            lambda = ratio;
            lambda_at = j;
        }
    }
    let mut mu = 0.0f64;
    let mut mu_at = 0i64;
    for (r, i) in a.row_window.iter().enumerate() {
        let mut s = 0.0;
        for (c, j) in a.col_window.iter().enumerate() {
            s += a.entries[r * ncols + c].abs() * p.get(j);
        }
        let ratio = s / q.get(i);
        if ratio > mu {
            mu = ratio;
            mu_at = i;
        }
    }
    let mut detail = BTreeMap::new();
    detail.insert("lambda".into(), serde_json::json!(lambda));
    detail.insert("mu".into(), serde_json::json!(mu));
    detail.insert("lambda_argmax_col".into(), serde_json::json!(lambda_at));
    detail.insert("mu_argmax_row".into(), serde_json::json!(mu_at));
    Ok(NormCertificate {
        method: CertMethod::Schur,
        bound: (mu * lambda).sqrt(),
        detail,
    })
}

/// Invertibility certificate for `A` from a bound on `||I - A||`: the
/// Neumann series gives `||A^{-1}|| <= 1 / (1 - bound)` whenever the bound
/// is below 1.
#[derive(Clone, Debug)]
pub struct InvertibilityCertificate {
    pub invertible: bool,
    pub inverse_norm_bound: Option<f64>,
    pub deviation_bound: f64,
    pub method: CertMethod,
}

pub fn neumann_certificate(norm_bound: &NormCertificate) -> InvertibilityCertificate {
    let b = norm_bound.bound;
    if b < 1.0 {
        InvertibilityCertificate {
            invertible: true,
            inverse_norm_bound: Some(1.0 / (1.0 - b)),
            deviation_bound: b,
            method: norm_bound.method,
        }
    } else {
        InvertibilityCertificate {
            invertible: false,
            inverse_norm_bound: None,
            deviation_bound: b,
            method: norm_bound.method,
        }
    }
}

/// Solution of a square truncated system together with its achieved
/// relative residual.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub x: RealSequence,
    pub residual: f64,
}

/// Direct solve of `A x = b` by pivoted LU on the truncation window. Fails
/// when the achieved relative residual exceeds `tol`.
pub fn solve(a: &TruncatedOperator, b: &RealSequence, tol: f64) -> Result<SolveOutcome> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(
            "solve requires a square truncation".into(),
        ));
    }
    let n = a.row_window().len();
    let rhs: Vec<f64> = a.row_window().iter().map(|k| b.get(k)).collect();
    let m = nalgebra::DMatrix::from_row_slice(n, n, &a.entries);
    let v = nalgebra::DVector::from_column_slice(&rhs);
    let b_norm = v.norm();
    let lu = m.clone().lu();
    let x = lu
        .solve(&v)
        .ok_or(Error::SolveFailure {
            residual: f64::INFINITY,
            tol,
        })?;
    let residual = (&m * &x - &v).norm() / b_norm.max(f64::MIN_POSITIVE);
    if residual > tol {
        return Err(Error::SolveFailure { residual, tol });
    }
    Ok(SolveOutcome {
        x: RealSequence::new(a.row_window(), x.as_slice().to_vec())?,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqspace::IndexWindow;

    fn small(entries: &[f64], n: usize) -> TruncatedOperator {
        let w = IndexWindow::one_sided(n as i64 - 1).unwrap();
        TruncatedOperator::new(w, w, entries.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let w = IndexWindow::one_sided(3).unwrap();
        let id = TruncatedOperator::identity(w);
        let a = RealSequence::from_fn(w, |n| (n + 1) as f64);
        assert_eq!(id.apply(&a), a);

        let z = TruncatedOperator::zero(w, w);
        assert!(z.apply(&a).values().iter().all(|&v| v == 0.0));

        let m = small(&[1.0, 2.0, 3.0, 4.0], 2);
        let ones = RealSequence::new(IndexWindow::one_sided(1).unwrap(), vec![1.0, 1.0]).unwrap();
        assert_eq!(m.apply(&ones).values(), &[3.0, 7.0]);
    }

    #[test]
    fn power_iteration_identity_and_diagonal() {
        let w = IndexWindow::one_sided(9).unwrap();
        let id = TruncatedOperator::identity(w);
        let cert = op_norm_power(&id, 1e-10, 50).unwrap();
        assert!((cert.bound - 1.0).abs() < 1e-9);

        let w3 = IndexWindow::one_sided(2).unwrap();
        let d = TruncatedOperator::from_fn(w3, w3, |n, k| if n == k { (n + 1) as f64 } else { 0.0 });
        let cert = op_norm_power(&d, 1e-12, 500).unwrap();
        assert!((cert.bound - 3.0).abs() < 1e-6);
    }

    #[test]
    fn power_iteration_exhaustion_carries_estimate() {
        let w = IndexWindow::one_sided(20).unwrap();
        // two nearly equal top singular values force slow convergence
        let d = TruncatedOperator::from_fn(w, w, |n, k| {
            if n != k {
                0.0
            } else if n == 0 {
                1.0
            } else if n == 1 {
                0.999999
            } else {
                0.1
            }
        });
        match op_norm_power(&d, 1e-16, 3) {
            Err(Error::ConvergenceFailure { best, .. }) => assert!(best > 0.9),
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn hs_norm_examples() {
        let w = IndexWindow::one_sided(3).unwrap();
        assert!((hs_norm(&TruncatedOperator::identity(w)).bound - 2.0).abs() < 1e-15);
        assert_eq!(hs_norm(&TruncatedOperator::zero(w, w)).bound, 0.0);
        let m = small(&[1.0, 2.0, 3.0, 4.0], 2);
        assert!((hs_norm(&m).bound - 30f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn schur_examples() {
        let w = IndexWindow::one_sided(3).unwrap();
        let ones = RealSequence::from_fn(w, |_| 1.0);
        let id = TruncatedOperator::identity(w);
        let c = schur_bound(&id, &ones, &ones).unwrap();
        assert!((c.bound - 1.0).abs() < 1e-15);

        let z = TruncatedOperator::zero(w, w);
        assert_eq!(schur_bound(&z, &ones, &ones).unwrap().bound, 0.0);

        let w2 = IndexWindow::one_sided(1).unwrap();
        let ones2 = RealSequence::from_fn(w2, |_| 1.0);
        let perm = small(&[0.0, 1.0, 1.0, 0.0], 2);
        assert!((schur_bound(&perm, &ones2, &ones2).unwrap().bound - 1.0).abs() < 1e-15);

        let bad = RealSequence::new(w2, vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            schur_bound(&perm, &bad, &ones2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn neumann_examples() {
        let mk = |b: f64| NormCertificate::closed_form(b);
        let c = neumann_certificate(&mk(0.0));
        assert!(c.invertible);
        assert_eq!(c.inverse_norm_bound, Some(1.0));

        let c = neumann_certificate(&mk(0.5));
        assert!((c.inverse_norm_bound.unwrap() - 2.0).abs() < 1e-15);

        let c = neumann_certificate(&mk(1.2));
        assert!(!c.invertible);
        assert_eq!(c.inverse_norm_bound, None);
    }

    #[test]
    fn solve_examples() {
        let w = IndexWindow::one_sided(1).unwrap();
        let id = TruncatedOperator::identity(w);
        let b = RealSequence::new(w, vec![3.0, -2.0]).unwrap();
        let out = solve(&id, &b, 1e-12).unwrap();
        assert_eq!(out.x, b);

        let d = small(&[2.0, 0.0, 0.0, 4.0], 2);
        let b = RealSequence::new(w, vec![2.0, 4.0]).unwrap();
        let out = solve(&d, &b, 1e-12).unwrap();
        assert!((out.x.values()[0] - 1.0).abs() < 1e-14);
        assert!((out.x.values()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn solve_matches_neumann_series_for_shift_perturbation() {
        // A = I + 0.3 * cyclic shift; the inverse is the alternating
        // geometric series in the shift, summable term by term.
        let n = 21usize;
        let w = IndexWindow::one_sided(n as i64 - 1).unwrap();
        let a = TruncatedOperator::from_fn(w, w, |i, j| {
            let shift = (i + 1).rem_euclid(n as i64) == j;
            (i == j) as u8 as f64 + if shift { 0.3 } else { 0.0 }
        });
        // deterministic pseudo-random rhs
        let b = RealSequence::from_fn(w, |i| ((i * 2654435761 + 1013904223) % 1000) as f64 / 500.0 - 1.0);
        let out = solve(&a, &b, 1e-12).unwrap();

        // oracle: x = sum_k (-0.3 S)^k b with S the cyclic shift,
        // (S v)_i = v_{i-1 mod n} since A adds 0.3 * v_{j = i+1 shifted}.
        let mut term: Vec<f64> = b.values().to_vec();
        let mut x = term.clone();
        for _ in 0..120 {
            let mut next = vec![0.0; n];
            for i in 0..n {
                // (S v)_i = v_{(i+1) mod n} because A[i, i+1] = 0.3
                next[i] = -0.3 * term[(i + 1) % n];
            }
            for i in 0..n {
                x[i] += next[i];
            }
            term = next;
        }
        for i in 0..n {
            assert!(
                (out.x.values()[i] - x[i]).abs() < 1e-10,
                "index {i}: {} vs {}",
                out.x.values()[i],
                x[i]
            );
        }
    }

    #[test]
    fn block_pack_unpack_round_trip() {
        let w = IndexWindow::one_sided(2).unwrap();
        let x = RealSequence::from_fn(w, |n| n as f64);
        let y = RealSequence::from_fn(w, |n| -(n as f64));
        let packed = pack_pair(&x, &y).unwrap();
        let (x2, y2) = unpack_pair(&packed, w).unwrap();
        assert_eq!(x, x2);
        assert_eq!(y, y2);

        let id = TruncatedOperator::identity(w);
        let z = TruncatedOperator::zero(w, w);
        let block = assemble_block2(&id, &z, &z, &id).unwrap();
        let applied = block.apply(&packed);
        assert_eq!(applied.values(), packed.values());
    }

    #[test]
    fn csv_export_shape() {
        let m = small(&[1.0, 2.0, 3.0, 4.0], 2);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("row,col,value"));
        assert_eq!(text.lines().count(), 5);
    }
}
