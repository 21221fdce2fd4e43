//! One-boson vectors and operators: smearing functions, diagonal phase
//! translations, and the smooth position localizer built by discrete
//! Fourier transform.

use crate::error::{CoreError, Result};
use crate::fock::basis::ModeBasis;
use crate::linalg;
use crate::profile::chi_cutoff as glue_profile;
use crate::scalar::{Scalar, C};

/// Amplitudes per mode; quadrature weights are folded in so that all inner
/// products are plain Euclidean.
#[derive(Debug, Clone)]
pub struct OneBosonVector<S: Scalar> {
    amplitudes: Vec<C<S>>,
}

impl<S: Scalar> OneBosonVector<S> {
    pub fn new(amplitudes: Vec<C<S>>) -> Self {
        Self { amplitudes }
    }

    /// Standard basis vector for mode `k`.
    pub fn unit(modes: usize, k: usize) -> Self {
        let mut amplitudes = vec![C::new(S::zero(), S::zero()); modes];
        amplitudes[k] = C::new(S::one(), S::zero());
        Self { amplitudes }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[C<S>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> C<S> {
        self.amplitudes[k]
    }

    pub fn norm_sqr(&self) -> S {
        crate::scalar::norm_sqr(&self.amplitudes)
    }

    pub fn norm(&self) -> S {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &Self) -> C<S> {
        crate::scalar::dot(&self.amplitudes, &other.amplitudes)
    }

    pub fn scaled(&self, factor: C<S>) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }
}

/// Dense M×M one-boson operator with an optional verified contraction flag.
#[derive(Debug, Clone)]
pub struct OneBosonMatrix<S: Scalar> {
    m: usize,
    entries: Vec<C<S>>, // row-major
    contraction: bool,
}

impl<S: Scalar> OneBosonMatrix<S> {
    pub fn from_dense(m: usize, entries: Vec<C<S>>) -> Self {
        assert_eq!(entries.len(), m * m);
        Self {
            m,
            entries,
            contraction: false,
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![C::new(S::zero(), S::zero()); m * m];
        for i in 0..m {
            entries[i * m + i] = C::new(S::one(), S::zero());
        }
        Self {
            m,
            entries,
            contraction: true,
        }
    }

    pub fn from_complex_diag(diag: &[C<S>]) -> Self {
        let m = diag.len();
        let mut entries = vec![C::new(S::zero(), S::zero()); m * m];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * m + i] = d;
        }
        Self {
            m,
            entries,
            contraction: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[C<S>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> C<S> {
        self.entries[i * self.m + j]
    }

    pub fn is_contraction_flagged(&self) -> bool {
        self.contraction
    }

    /// Largest singular value (power iteration, deterministic seed).
    pub fn sigma_max(&self) -> S {
        linalg::dense_sigma_max(self.m, &self.entries, 0x0b05)
    }

    /// Verify `σ_max ≤ 1 + tol` and set the contraction flag.
    pub fn checked_contraction(mut self) -> Result<Self> {
        let sigma = self.sigma_max();
        if sigma > S::one() + S::of(crate::tol::CONTRACTION_SLACK) {
            return Err(CoreError::NotContraction {
                sigma: sigma.to_f64_lossy(),
            });
        }
        self.contraction = true;
        Ok(self)
    }

    /// `‖b†b − Id‖_max ≤ tol`.
    pub fn is_unitary(&self, tol: S) -> bool {
        let m = self.m;
        for i in 0..m {
            for j in 0..m {
                let mut acc = C::new(S::zero(), S::zero());
                for k in 0..m {
                    acc += self.entries[k * m + i].conj() * self.entries[k * m + j];
                }
                let target = if i == j { S::one() } else { S::zero() };
                if (acc - C::new(target, S::zero())).norm_sqr().sqrt() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &OneBosonVector<S>) -> OneBosonVector<S> {
        assert_eq!(v.len(), self.m);
        let mut out = vec![C::new(S::zero(), S::zero()); self.m];
        linalg::dense_matvec(self.m, &self.entries, v.amplitudes(), &mut out);
        OneBosonVector::new(out)
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        let mut entries = vec![C::new(S::zero(), S::zero()); m * m];
        for i in 0..m {
            for j in 0..m {
                entries[j * m + i] = self.entries[i * m + j].conj();
            }
        }
        Self {
            m,
            entries,
            contraction: self.contraction,
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let m = self.m;
        let mut entries = vec![C::new(S::zero(), S::zero()); m * m];
        for i in 0..m {
            for k in 0..m {
                let a = self.entries[i * m + k];
                if a.norm_sqr() == S::zero() {
                    continue;
                }
                for j in 0..m {
                    entries[i * m + j] += a * other.entries[k * m + j];
                }
            }
        }
        Self {
            m,
            entries,
            contraction: false,
        }
    }

    /// Column `k` as a one-boson vector.
    pub fn column(&self, k: usize) -> OneBosonVector<S> {
        OneBosonVector::new((0..self.m).map(|i| self.entries[i * self.m + k]).collect())
    }
}

/// Diagonal unitary `e^{i·distance·k}` per mode: the photon translation at
/// the one-boson level. Its second quantization translates the photon cloud.
pub fn one_boson_translation<S: Scalar>(distance: S, basis: &ModeBasis<S>) -> OneBosonMatrix<S> {
    let diag: Vec<C<S>> = basis
        .modes()
        .iter()
        .map(|m| C::new(S::zero(), distance * m.momentum).exp())
        .collect();
    let mut out = OneBosonMatrix::from_complex_diag(&diag);
    out.contraction = true;
    out
}

/// Smooth cutoff in photon position built by discrete Fourier transform:
/// transform to the conjugate grid, multiply by a bump of the given
/// radius/center, transform back, then symmetrize and clip eigenvalues
/// to [0, 1] so that `0 ⪯ j ⪯ Id` holds exactly up to rounding.
///
/// Requires a uniform momentum grid; `ygrid_size ≥ mode count` controls the
/// resolution of the conjugate grid.
pub fn position_localizer<S: Scalar>(
    radius: S,
    center: S,
    ygrid_size: usize,
    basis: &ModeBasis<S>,
) -> Result<OneBosonMatrix<S>> {
    let m = basis.len();
    let dk = basis.uniform_spacing().ok_or(CoreError::NonUniformGrid)?;
    if ygrid_size < m {
        return Err(CoreError::InvalidInput(
            "ygrid_size must be at least the mode count".into(),
        ));
    }
    if radius < S::zero() {
        return Err(CoreError::InvalidInput("radius must be nonnegative".into()));
    }
    let ny = ygrid_size;
    let dy = S::of(2.0) * S::PI() / (S::of(ny as f64) * dk);
    let momenta: Vec<S> = basis.modes().iter().map(|md| md.momentum).collect();

    // bump values on the conjugate grid
    let ys: Vec<S> = (0..ny)
        .map(|j| (S::of(j as f64) - S::of(ny as f64) / S::of(2.0)) * dy)
        .collect();
    let bump: Vec<S> = ys
        .iter()
        .map(|&y| {
            if radius == S::zero() {
                S::zero()
            } else {
                glue_profile((y - center).abs() / radius)
            }
        })
        .collect();

    // j[a,b] = (1/Ny) Σ_j bump_j e^{i y_j (k_a - k_b)}
    let inv_ny = S::one() / S::of(ny as f64);
    let mut entries = vec![C::new(S::zero(), S::zero()); m * m];
    for a in 0..m {
        for b in 0..m {
            let dkab = momenta[a] - momenta[b];
            let mut acc = C::new(S::zero(), S::zero());
            for (j, &w) in bump.iter().enumerate() {
                if w != S::zero() {
                    acc += C::new(S::zero(), ys[j] * dkab).exp().scale(w);
                }
            }
            entries[a * m + b] = acc.scale(inv_ny);
        }
    }

    // symmetrize
    for a in 0..m {
        for b in (a + 1)..m {
            let avg = (entries[a * m + b] + entries[b * m + a].conj()).scale(S::of(0.5));
            entries[a * m + b] = avg;
            entries[b * m + a] = avg.conj();
        }
        entries[a * m + a] = C::new(entries[a * m + a].re, S::zero());
    }

    // eigenvalue clip to [0, 1]
    let mut work = entries.clone();
    let (evals, z) = linalg::hermitian_eigen(m, &mut work)?;
    let clipped: Vec<S> = evals
        .iter()
        .map(|&ev| ev.max(S::zero()).min(S::one()))
        .collect();
    let mut out = vec![C::new(S::zero(), S::zero()); m * m];
    for a in 0..m {
        for b in 0..m {
            let mut acc = C::new(S::zero(), S::zero());
            for k in 0..m {
                acc += z[a * m + k] * z[b * m + k].conj() * C::new(clipped[k], S::zero());
            }
            out[a * m + b] = acc;
        }
    }

    let mut res = OneBosonMatrix::from_dense(m, out);
    res.contraction = true;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(m: usize) -> ModeBasis<f64> {
        ModeBasis::uniform_symmetric(m, 1.0, 0.0).unwrap()
    }

    #[test]
    fn translation_zero_distance_is_identity() {
        let b = basis(6);
        let t = one_boson_translation(0.0, &b);
        for i in 0..6 {
            for j in 0..6 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((t.entry(i, j) - C::new(target, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn translation_is_unitary() {
        let b = basis(8);
        let t = one_boson_translation(3.7, &b);
        assert!(t.is_unitary(1e-12));
        assert!((t.sigma_max() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn localizer_full_radius_is_identity() {
        let b = basis(8);
        // y-extent of the conjugate grid
        let dk = b.uniform_spacing().unwrap();
        let ny = 16;
        let y_extent = 2.0 * std::f64::consts::PI / (ny as f64 * dk) * (ny as f64 / 2.0);
        let j = position_localizer(2.0 * y_extent, 0.0, ny, &b).unwrap();
        for a in 0..8 {
            for c in 0..8 {
                let target = if a == c { 1.0 } else { 0.0 };
                assert!(
                    (j.entry(a, c) - C::new(target, 0.0)).norm() < 1e-8,
                    "entry ({a},{c})"
                );
            }
        }
    }

    #[test]
    fn localizer_zero_radius_vanishes() {
        let b = basis(8);
        let j = position_localizer(0.0, 0.0, 16, &b).unwrap();
        for e in j.entries() {
            assert!(e.norm() < 1e-8);
        }
    }

    #[test]
    fn localizer_is_positive_contraction() {
        let b = basis(12);
        let j = position_localizer(1.5, 0.0, 48, &b).unwrap();
        assert!(j.sigma_max() <= 1.0 + 1e-10);
        // positivity: eigen-decompose and check lowest eigenvalue ≥ -tol
        let mut work = j.entries().to_vec();
        let (evals, _) = linalg::hermitian_eigen(12, &mut work).unwrap();
        assert!(evals[0] >= -1e-12);
    }

    #[test]
    fn disjoint_localizers_have_tiny_product() {
        // product-norm oracle: with ygrid_size == mode count the transform is
        // a square unitary DFT, so disjointly supported bumps multiply to zero
        let b = ModeBasis::<f64>::uniform_symmetric(48, 6.0, 0.0).unwrap();
        let dk = b.uniform_spacing().unwrap();
        let ny = 48;
        let y_extent = std::f64::consts::PI / dk; // half-width of the y grid
        let sep = 0.9 * y_extent;
        let radius = 0.12 * y_extent;
        let j1 = position_localizer(radius, -sep / 2.0, ny, &b).unwrap();
        let j2 = position_localizer(radius, sep / 2.0, ny, &b).unwrap();
        let prod = j1.matmul(&j2);
        let norm = prod.sigma_max();
        assert!(norm <= 1e-6, "product norm {norm}");
    }

    #[test]
    fn localizer_rejects_non_uniform_grid() {
        let b = ModeBasis::new(&[(0.1, 0.1), (0.3, 0.1), (0.9, 0.1)], 0.0, 1.0).unwrap();
        match position_localizer(1.0, 0.0, 8, &b) {
            Err(CoreError::NonUniformGrid) => {}
            other => panic!("expected NonUniformGrid, got {other:?}"),
        }
    }
}
