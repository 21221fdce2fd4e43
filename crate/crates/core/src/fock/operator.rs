//! Sparse Hermitian-capable operators on (products of) truncated Fock spaces.
//!
//! Storage is compressed rows with columns sorted inside each row. Matrix
//! entries are complex over the generic scalar. Operators are immutable after
//! construction; all algebra returns new values.
//!
//! Serialization uses a plain text triplet format:
//!
//! ```text
//! fockop v1 dim=<n> hermitian=<0|1> nnz=<m>
//! <row> <col> <re> <im>
//! ```
//!
//! one entry per line, shortest round-trip decimals.

use crate::error::{CoreError, Result};
use crate::scalar::{Scalar, C};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Labels for the pieces of an assembled Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartTag {
    /// `Σ p²` plus the symmetrized `p·A + A·p` cross term.
    Kinetic,
    /// `α Σ A(x_j)²` (and the optional two-level surrogate term).
    Interaction,
    /// External plus pair potential, diagonal in the electron configuration.
    Potential,
    /// Field energy `dΓ(ω)`, diagonal in the occupation basis.
    Field,
}

impl std::fmt::Display for PartTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PartTag::Kinetic => "kinetic",
            PartTag::Interaction => "interaction",
            PartTag::Potential => "potential",
            PartTag::Field => "field",
        };
        f.write_str(s)
    }
}

/// Sparse complex matrix in CSR form.
#[derive(Debug, Clone)]
pub struct FockOperator<S: Scalar> {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C<S>>,
    hermitian: bool,
    part: Option<PartTag>,
}

impl<S: Scalar> FockOperator<S> {
    /// Build from unsorted triplets; duplicate positions are summed,
    /// exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C<S>)>) -> Self {
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut rows: Vec<usize> = Vec::with_capacity(triplets.len());
        let mut col_idx: Vec<usize> = Vec::with_capacity(triplets.len());
        let mut values: Vec<C<S>> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet index out of range");
            match (rows.last(), col_idx.last()) {
                (Some(&lr), Some(&lc)) if lr == r && lc == c => {
                    *values.last_mut().unwrap() += v;
                }
                _ => {
                    rows.push(r);
                    col_idx.push(c);
                    values.push(v);
                }
            }
        }
        let mut row_ptr = vec![0usize; dim + 1];
        for &r in &rows {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let mut op = Self {
            dim,
            row_ptr,
            col_idx,
            values,
            hermitian: false,
            part: None,
        };
        op.prune_zeros();
        op
    }

    /// Zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: vec![0; dim + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
            hermitian: true,
            part: None,
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut op = Self::from_triplets(
            dim,
            (0..dim)
                .map(|i| (i, i, C::new(S::one(), S::zero())))
                .collect(),
        );
        op.hermitian = true;
        op
    }

    /// Real diagonal matrix.
    pub fn from_real_diag(diag: &[S]) -> Self {
        let mut op = Self::from_triplets(
            diag.len(),
            diag.iter()
                .enumerate()
                .map(|(i, &d)| (i, i, C::new(d, S::zero())))
                .collect(),
        );
        op.hermitian = true;
        op
    }

    /// Complex diagonal matrix.
    pub fn from_complex_diag(diag: &[C<S>]) -> Self {
        Self::from_triplets(
            diag.len(),
            diag.iter().enumerate().map(|(i, &d)| (i, i, d)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_hermitian_flagged(&self) -> bool {
        self.hermitian
    }

    pub fn part(&self) -> Option<PartTag> {
        self.part
    }

    pub fn with_part(mut self, tag: PartTag) -> Self {
        self.part = Some(tag);
        self
    }

    /// Iterate the stored entries of one row as `(col, value)` pairs.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C<S>)> + '_ {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        self.col_idx[lo..hi]
            .iter()
            .zip(&self.values[lo..hi])
            .map(|(&c, &v)| (c, v))
    }

    /// All stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C<S>)> + '_ {
        (0..self.dim).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    fn prune_zeros(&mut self) {
        let keep: Vec<bool> = self
            .values
            .iter()
            .map(|v| v.re != S::zero() || v.im != S::zero())
            .collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut new_col = Vec::with_capacity(self.col_idx.len());
        let mut new_val = Vec::with_capacity(self.values.len());
        let mut new_ptr = vec![0usize; self.dim + 1];
        for r in 0..self.dim {
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                if keep[p] {
                    new_col.push(self.col_idx[p]);
                    new_val.push(self.values[p]);
                }
            }
            new_ptr[r + 1] = new_col.len();
        }
        self.col_idx = new_col;
        self.values = new_val;
        self.row_ptr = new_ptr;
    }

    /// `y = M x` (sequential rows; each row is a fixed-order dot product).
    pub fn apply(&self, x: &[C<S>], y: &mut [C<S>]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = C::new(S::zero(), S::zero());
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[p] * x[self.col_idx[p]];
            }
            y[r] = acc;
        }
    }

    /// `y = M x` with rows distributed over threads. Each output element is
    /// still a sequential dot product, so the result is bit-deterministic.
    pub fn apply_par(&self, x: &[C<S>], y: &mut [C<S>]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        y.par_iter_mut().enumerate().for_each(|(r, out)| {
            let mut acc = C::new(S::zero(), S::zero());
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[p] * x[self.col_idx[p]];
            }
            *out = acc;
        });
    }

    pub fn apply_vec(&self, x: &[C<S>]) -> Vec<C<S>> {
        let mut y = vec![C::new(S::zero(), S::zero()); self.dim];
        if self.dim >= 4096 {
            self.apply_par(x, &mut y);
        } else {
            self.apply(x, &mut y);
        }
        y
    }

    /// Entrywise sum. Part tags and flags are not propagated.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut col_idx = Vec::with_capacity(self.nnz() + other.nnz());
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        let mut row_ptr = vec![0usize; self.dim + 1];
        for r in 0..self.dim {
            let (mut pa, ea) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut pb, eb) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while pa < ea || pb < eb {
                let ca = if pa < ea { self.col_idx[pa] } else { usize::MAX };
                let cb = if pb < eb { other.col_idx[pb] } else { usize::MAX };
                if ca < cb {
                    col_idx.push(ca);
                    values.push(self.values[pa]);
                    pa += 1;
                } else if cb < ca {
                    col_idx.push(cb);
                    values.push(other.values[pb]);
                    pb += 1;
                } else {
                    let v = self.values[pa] + other.values[pb];
                    if v.re != S::zero() || v.im != S::zero() {
                        col_idx.push(ca);
                        values.push(v);
                    }
                    pa += 1;
                    pb += 1;
                }
            }
            row_ptr[r + 1] = col_idx.len();
        }
        Self {
            dim: self.dim,
            row_ptr,
            col_idx,
            values,
            hermitian: false,
            part: None,
        }
    }

    /// Multiply every entry by a complex constant.
    pub fn scaled(&self, factor: C<S>) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v *= factor;
        }
        out.hermitian = false;
        out.part = None;
        out
    }

    pub fn scaled_real(&self, factor: S) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = v.scale(factor);
        }
        out.part = None;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled_real(-S::one()))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let triplets = self
            .entries()
            .map(|(r, c, v)| (c, r, v.conj()))
            .collect::<Vec<_>>();
        let mut out = Self::from_triplets(self.dim, triplets);
        out.hermitian = self.hermitian;
        out
    }

    /// Matrix product `self · other` (sparse accumulator per row).
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut acc: Vec<C<S>> = vec![C::new(S::zero(), S::zero()); dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        let mut row_ptr = vec![0usize; dim + 1];
        for r in 0..dim {
            for pa in self.row_ptr[r]..self.row_ptr[r + 1] {
                let k = self.col_idx[pa];
                let va = self.values[pa];
                for pb in other.row_ptr[k]..other.row_ptr[k + 1] {
                    let c = other.col_idx[pb];
                    if acc[c].re == S::zero() && acc[c].im == S::zero() {
                        touched.push(c);
                    }
                    acc[c] += va * other.values[pb];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                let v = acc[c];
                if v.re != S::zero() || v.im != S::zero() {
                    col_idx.push(c);
                    values.push(v);
                }
                acc[c] = C::new(S::zero(), S::zero());
            }
            touched.clear();
            row_ptr[r + 1] = col_idx.len();
        }
        Self {
            dim,
            row_ptr,
            col_idx,
            values,
            hermitian: false,
            part: None,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let dim = da * db;
        let nnz = self.nnz() * other.nnz();
        let mut col_idx = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        let mut row_ptr = vec![0usize; dim + 1];
        for i in 0..da {
            for k in 0..db {
                let r = i * db + k;
                for pa in self.row_ptr[i]..self.row_ptr[i + 1] {
                    let j = self.col_idx[pa];
                    let va = self.values[pa];
                    for pb in other.row_ptr[k]..other.row_ptr[k + 1] {
                        col_idx.push(j * db + other.col_idx[pb]);
                        values.push(va * other.values[pb]);
                    }
                }
                row_ptr[r + 1] = col_idx.len();
            }
        }
        let mut out = Self {
            dim,
            row_ptr,
            col_idx,
            values,
            hermitian: false,
            part: None,
        };
        out.hermitian = self.hermitian && other.hermitian;
        out.prune_zeros();
        out
    }

    /// Apply `f(row, col, value)` to every stored entry.
    pub fn map_entries<F: Fn(usize, usize, C<S>) -> C<S>>(&self, f: F) -> Self {
        let triplets = self
            .entries()
            .map(|(r, c, v)| (r, c, f(r, c, v)))
            .collect::<Vec<_>>();
        Self::from_triplets(self.dim, triplets)
    }

    /// Restrict to the subspace spanned by `kept` basis indices (sorted,
    /// deduplicated). Rows and columns outside are dropped.
    pub fn restrict(&self, kept: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.dim];
        for (ni, &oi) in kept.iter().enumerate() {
            new_index[oi] = ni;
        }
        let mut triplets = Vec::new();
        for &r in kept {
            for (c, v) in self.row(r) {
                if new_index[c] != usize::MAX {
                    triplets.push((new_index[r], new_index[c], v));
                }
            }
        }
        let mut out = Self::from_triplets(kept.len(), triplets);
        out.hermitian = self.hermitian;
        out
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> S {
        self.values
            .iter()
            .fold(S::zero(), |m, v| m.max(v.norm_sqr().sqrt()))
    }

    /// `‖M − M†‖_max`.
    pub fn hermiticity_defect(&self) -> S {
        self.sub(&self.adjoint()).max_abs()
    }

    /// Check Hermiticity against the centralized tolerance and set the flag.
    pub fn into_hermitian_checked(mut self) -> Result<Self> {
        let scale = self.max_abs();
        let defect = self.hermiticity_defect();
        if defect > S::of(crate::tol::HERMITICITY_REL) * scale.max(S::one()) {
            return Err(CoreError::CertificationFailure {
                what: "hermiticity".into(),
                margin: defect.to_f64_lossy(),
            });
        }
        self.hermitian = true;
        Ok(self)
    }

    /// Mark Hermitian without checking (for operators Hermitian by construction).
    pub fn assume_hermitian(mut self) -> Self {
        self.hermitian = true;
        self
    }

    /// Gershgorin interval containing the spectrum (Hermitian operators).
    pub fn gershgorin_interval(&self) -> (S, S) {
        let mut lo = S::infinity();
        let mut hi = S::neg_infinity();
        for r in 0..self.dim {
            let mut center = S::zero();
            let mut radius = S::zero();
            for (c, v) in self.row(r) {
                if c == r {
                    center = v.re;
                } else {
                    radius = radius + v.norm_sqr().sqrt();
                }
            }
            lo = lo.min(center - radius);
            hi = hi.max(center + radius);
        }
        if self.dim == 0 || !lo.is_finite() {
            (S::zero(), S::zero())
        } else {
            (lo, hi)
        }
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<C<S>> {
        let mut dense = vec![C::new(S::zero(), S::zero()); self.dim * self.dim];
        for (r, c, v) in self.entries() {
            dense[r * self.dim + c] = v;
        }
        dense
    }

    /// Largest singular value via power iteration on `M†M`, seeded.
    pub fn singular_norm_est(&self, seed: u64, rel_tol: S, max_iter: usize) -> S {
        if self.nnz() == 0 || self.dim == 0 {
            return S::zero();
        }
        let adj = self.adjoint();
        let mut rng = crate::rng::SplitMix64::new(seed);
        let mut v = rng.complex_vector::<S>(self.dim);
        crate::scalar::normalize(&mut v);
        let mut prev = S::zero();
        let mut est = S::zero();
        for _ in 0..max_iter {
            let w = self.apply_vec(&v);
            let mut u = adj.apply_vec(&w);
            let n = crate::scalar::normalize(&mut u);
            est = n.sqrt();
            if (est - prev).abs() <= rel_tol * est.max(S::epsilon()) {
                return est;
            }
            prev = est;
            v = u;
        }
        est
    }

    /// Write the triplet text format.
    pub fn write_triplets<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "fockop v1 dim={} hermitian={} nnz={}",
            self.dim,
            if self.hermitian { 1 } else { 0 },
            self.nnz()
        )?;
        for (r, c, v) in self.entries() {
            writeln!(w, "{} {} {} {}", r, c, v.re.to_f64_lossy(), v.im.to_f64_lossy())?;
        }
        Ok(())
    }

    /// Read the triplet text format.
    pub fn read_triplets<R: BufRead>(r: &mut R) -> Result<Self> {
        let mut header = String::new();
        r.read_line(&mut header)
            .map_err(|e| CoreError::Parse(e.to_string()))?;
        let header = header.trim();
        let mut dim = None;
        let mut herm = false;
        if !header.starts_with("fockop v1") {
            return Err(CoreError::Parse(format!("bad header: {header}")));
        }
        for token in header.split_whitespace().skip(2) {
            if let Some(v) = token.strip_prefix("dim=") {
                dim = Some(v.parse::<usize>().map_err(|e| CoreError::Parse(e.to_string()))?);
            } else if let Some(v) = token.strip_prefix("hermitian=") {
                herm = v == "1";
            }
        }
        let dim = dim.ok_or_else(|| CoreError::Parse("missing dim".into()))?;
        let mut triplets = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| CoreError::Parse(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let row: usize = it
                .next()
                .ok_or_else(|| CoreError::Parse("missing row".into()))?
                .parse()
                .map_err(|e: std::num::ParseIntError| CoreError::Parse(e.to_string()))?;
            let col: usize = it
                .next()
                .ok_or_else(|| CoreError::Parse("missing col".into()))?
                .parse()
                .map_err(|e: std::num::ParseIntError| CoreError::Parse(e.to_string()))?;
            let re: f64 = it
                .next()
                .ok_or_else(|| CoreError::Parse("missing re".into()))?
                .parse()
                .map_err(|e: std::num::ParseFloatError| CoreError::Parse(e.to_string()))?;
            let im: f64 = it
                .next()
                .ok_or_else(|| CoreError::Parse("missing im".into()))?
                .parse()
                .map_err(|e: std::num::ParseFloatError| CoreError::Parse(e.to_string()))?;
            triplets.push((row, col, C::new(S::of(re), S::of(im))));
        }
        let mut op = Self::from_triplets(dim, triplets);
        op.hermitian = herm;
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = FockOperator<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn triplets_sum_duplicates_and_sort() {
        let op = Op::from_triplets(
            3,
            vec![
                (2, 1, c(1.0, 0.0)),
                (0, 2, c(0.5, 0.0)),
                (0, 2, c(0.5, 0.0)),
                (0, 0, c(2.0, 0.0)),
            ],
        );
        assert_eq!(op.nnz(), 3);
        let entries: Vec<_> = op.entries().collect();
        assert_eq!(entries[0].0, 0);
        assert_eq!(entries[0].1, 0);
        assert_eq!(entries[1].1, 2);
        assert!((entries[1].2.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn matvec_identity() {
        let id = Op::identity(4);
        let x = vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(0.0, 0.0)];
        let y = id.apply_vec(&x);
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn add_and_sub_roundtrip() {
        let a = Op::from_triplets(2, vec![(0, 1, c(1.0, 1.0)), (1, 1, c(2.0, 0.0))]);
        let b = Op::from_triplets(2, vec![(0, 0, c(1.0, 0.0)), (0, 1, c(-1.0, -1.0))]);
        let s = a.add(&b);
        assert_eq!(s.nnz(), 2); // (0,1) cancels exactly
        let back = s.sub(&b);
        assert!((back.sub(&a)).max_abs() < 1e-15);
    }

    #[test]
    fn adjoint_of_adjoint() {
        let a = Op::from_triplets(3, vec![(0, 1, c(1.0, 2.0)), (2, 0, c(0.0, -1.0))]);
        let aa = a.adjoint().adjoint();
        assert!(a.sub(&aa).max_abs() < 1e-15);
    }

    #[test]
    fn matmul_matches_dense() {
        let a = Op::from_triplets(
            3,
            vec![(0, 1, c(1.0, 1.0)), (1, 2, c(2.0, 0.0)), (2, 0, c(0.0, 1.0))],
        );
        let b = Op::from_triplets(
            3,
            vec![(1, 1, c(1.0, -1.0)), (2, 0, c(3.0, 0.0)), (0, 2, c(1.0, 0.0))],
        );
        let prod = a.matmul(&b);
        let (da, db) = (a.to_dense(), b.to_dense());
        let mut dense = vec![c(0.0, 0.0); 9];
        for i in 0..3 {
            for k in 0..3 {
                for j in 0..3 {
                    dense[i * 3 + j] += da[i * 3 + k] * db[k * 3 + j];
                }
            }
        }
        let pd = prod.to_dense();
        for (x, y) in pd.iter().zip(&dense) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn kron_matches_dense() {
        let a = Op::from_triplets(2, vec![(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]);
        let b = Op::from_real_diag(&[1.0, 2.0]);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        let kd = k.to_dense();
        // (0,2)=1, (1,3)=2, (2,0)=1, (3,1)=2
        assert!((kd[0 * 4 + 2].re - 1.0).abs() < 1e-15);
        assert!((kd[1 * 4 + 3].re - 2.0).abs() < 1e-15);
        assert!((kd[2 * 4 + 0].re - 1.0).abs() < 1e-15);
        assert!((kd[3 * 4 + 1].re - 2.0).abs() < 1e-15);
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn restrict_submatrix() {
        let a = Op::from_triplets(
            3,
            vec![
                (0, 0, c(1.0, 0.0)),
                (1, 1, c(2.0, 0.0)),
                (2, 2, c(3.0, 0.0)),
                (0, 2, c(5.0, 0.0)),
            ],
        );
        let r = a.restrict(&[0, 2]);
        assert_eq!(r.dim(), 2);
        let d = r.to_dense();
        assert!((d[0].re - 1.0).abs() < 1e-15);
        assert!((d[3].re - 3.0).abs() < 1e-15);
        assert!((d[1].re - 5.0).abs() < 1e-15);
    }

    #[test]
    fn hermiticity_check_accepts_and_rejects() {
        let h = Op::from_triplets(2, vec![(0, 1, c(0.0, 1.0)), (1, 0, c(0.0, -1.0))]);
        assert!(h.clone().into_hermitian_checked().is_ok());
        let bad = Op::from_triplets(2, vec![(0, 1, c(1.0, 0.0))]);
        assert!(bad.into_hermitian_checked().is_err());
    }

    #[test]
    fn gershgorin_contains_diagonal() {
        let h = Op::from_real_diag(&[-3.0, 5.0]);
        let (lo, hi) = h.gershgorin_interval();
        assert!(lo <= -3.0 && hi >= 5.0);
    }

    #[test]
    fn singular_norm_of_diag() {
        let h = Op::from_real_diag(&[1.0, -7.0, 3.0]);
        let n = h.singular_norm_est(1, 1e-12, 500);
        assert!((n - 7.0).abs() < 1e-6);
    }

    #[test]
    fn triplet_io_roundtrip() {
        let a = Op::from_triplets(
            3,
            vec![(0, 1, c(1.25, -0.5)), (2, 2, c(1.0 / 3.0, 0.0))],
        );
        let mut buf: Vec<u8> = Vec::new();
        a.write_triplets(&mut buf).unwrap();
        let b = Op::read_triplets(&mut std::io::BufReader::new(&buf[..])).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert!(a.sub(&b).max_abs() < 1e-15);
    }
}
