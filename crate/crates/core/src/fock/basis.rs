//! Mode sets and the graded occupation-number basis of the truncated
//! Fock space.

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use std::cmp::Ordering;

/// One discretized photon momentum mode (1D, scalar channel).
#[derive(Debug, Clone)]
pub struct Mode<S: Scalar> {
    pub index: usize,
    pub momentum: S,
    /// Quadrature weight of the continuum measure carried by this mode.
    pub weight: S,
    /// Dispersion `ω = |k|`.
    pub frequency: S,
}

/// Ordered set of modes with IR/UV cutoffs and the soft/interacting split.
#[derive(Debug, Clone)]
pub struct ModeBasis<S: Scalar> {
    modes: Vec<Mode<S>>,
    ir_cutoff: S,
    uv_cutoff: S,
    soft_set: Vec<usize>,
    interacting_set: Vec<usize>,
}

impl<S: Scalar> ModeBasis<S> {
    /// Build from `(momentum, weight)` pairs; momenta must be strictly
    /// increasing and weights positive.
    pub fn new(momenta_weights: &[(S, S)], ir_cutoff: S, uv_cutoff: S) -> Result<Self> {
        if momenta_weights.is_empty() {
            return Err(CoreError::InvalidInput("mode basis needs at least one mode".into()));
        }
        if ir_cutoff < S::zero() || uv_cutoff <= S::zero() {
            return Err(CoreError::InvalidInput(
                "cutoffs must satisfy uv > 0 and ir >= 0".into(),
            ));
        }
        let mut modes = Vec::with_capacity(momenta_weights.len());
        for (i, &(k, w)) in momenta_weights.iter().enumerate() {
            if w <= S::zero() {
                return Err(CoreError::InvalidInput(format!("weight of mode {i} not positive")));
            }
            if i > 0 && k <= momenta_weights[i - 1].0 {
                return Err(CoreError::InvalidInput(
                    "momenta must be strictly increasing".into(),
                ));
            }
            modes.push(Mode {
                index: i,
                momentum: k,
                weight: w,
                frequency: k.abs(),
            });
        }
        let mut soft_set = Vec::new();
        let mut interacting_set = Vec::new();
        for m in &modes {
            if m.frequency < ir_cutoff {
                soft_set.push(m.index);
            } else {
                interacting_set.push(m.index);
            }
        }
        Ok(Self {
            modes,
            ir_cutoff,
            uv_cutoff,
            soft_set,
            interacting_set,
        })
    }

    /// Uniform symmetric grid of `m` modes (m even) covering `[-lambda, lambda]`
    /// at midpoints, spacing `2·lambda/m`, weight = spacing. No zero mode.
    pub fn uniform_symmetric(m: usize, uv_cutoff: S, ir_cutoff: S) -> Result<Self> {
        if m == 0 || m % 2 != 0 {
            return Err(CoreError::InvalidInput(
                "uniform symmetric basis needs an even, positive mode count".into(),
            ));
        }
        let dk = (S::of(2.0) * uv_cutoff) / S::of(m as f64);
        let pairs: Vec<(S, S)> = (0..m)
            .map(|j| {
                let k = -uv_cutoff + (S::of(j as f64) + S::of(0.5)) * dk;
                (k, dk)
            })
            .collect();
        Self::new(&pairs, ir_cutoff, uv_cutoff)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[Mode<S>] {
        &self.modes
    }

    pub fn mode(&self, i: usize) -> &Mode<S> {
        &self.modes[i]
    }

    pub fn ir_cutoff(&self) -> S {
        self.ir_cutoff
    }

    pub fn uv_cutoff(&self) -> S {
        self.uv_cutoff
    }

    pub fn soft_set(&self) -> &[usize] {
        &self.soft_set
    }

    pub fn interacting_set(&self) -> &[usize] {
        &self.interacting_set
    }

    pub fn frequencies(&self) -> Vec<S> {
        self.modes.iter().map(|m| m.frequency).collect()
    }

    /// Same modes, new IR cutoff (soft/interacting split recomputed).
    pub fn with_ir_cutoff(&self, ir_cutoff: S) -> Result<Self> {
        let pairs: Vec<(S, S)> = self.modes.iter().map(|m| (m.momentum, m.weight)).collect();
        Self::new(&pairs, ir_cutoff, self.uv_cutoff)
    }

    /// Momentum spacing if the grid is uniform.
    pub fn uniform_spacing(&self) -> Option<S> {
        if self.modes.len() < 2 {
            return None;
        }
        let dk = self.modes[1].momentum - self.modes[0].momentum;
        let tol = S::of(1e-10) * dk.abs().max(S::one());
        for w in self.modes.windows(2) {
            if ((w[1].momentum - w[0].momentum) - dk).abs() > tol {
                return None;
            }
        }
        Some(dk)
    }
}

/// Occupation numbers per mode with their total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationVector {
    pub occupations: Vec<u32>,
    pub total: u32,
}

impl OccupationVector {
    pub fn new(occupations: Vec<u32>) -> Self {
        let total = occupations.iter().sum();
        Self { occupations, total }
    }
}

/// Enumeration order: by grade (total occupation), then descending
/// lexicographic within a grade, so e.g. for two modes:
/// `00, 10, 01, 20, 11, 02`.
fn state_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let ta: u32 = a.iter().sum();
    let tb: u32 = b.iter().sum();
    ta.cmp(&tb).then_with(|| b.cmp(a))
}

/// Truncated Fock basis: all occupation vectors with total ≤ `n_max`,
/// in a deterministic graded order. State 0 is the vacuum.
#[derive(Debug, Clone)]
pub struct FockBasis<S: Scalar> {
    mode_basis: ModeBasis<S>,
    n_max: u32,
    states: Vec<OccupationVector>,
}

/// Default cap on the basis dimension; constructions above it error out.
pub const DEFAULT_DIMENSION_CAP: usize = 20_000_000;

/// Dimension of the truncated basis, `C(M + N_max, M)`, without building it.
pub fn fock_dimension(m: usize, n_max: u32) -> u128 {
    binomial_u128((m as u64) + (n_max as u64), m as u64)
}

/// Binomial coefficient in u128, for the dimension formula C(M + N_max, M).
fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * ((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Enumerate the truncated Fock basis over `mode_basis` with total
/// occupation at most `n_max`.
pub fn build_fock_basis<S: Scalar>(mode_basis: &ModeBasis<S>, n_max: u32) -> Result<FockBasis<S>> {
    build_fock_basis_with_cap(mode_basis, n_max, DEFAULT_DIMENSION_CAP)
}

pub fn build_fock_basis_with_cap<S: Scalar>(
    mode_basis: &ModeBasis<S>,
    n_max: u32,
    cap: usize,
) -> Result<FockBasis<S>> {
    let m = mode_basis.len();
    let dim = binomial_u128((m as u64) + (n_max as u64), m as u64);
    if dim > cap as u128 {
        return Err(CoreError::DimensionOverflow { dim, cap });
    }
    let mut states = Vec::with_capacity(dim as usize);
    let mut current = vec![0u32; m];
    for grade in 0..=n_max {
        enumerate_grade(m, grade, 0, &mut current, &mut states);
    }
    debug_assert_eq!(states.len() as u128, dim);
    Ok(FockBasis {
        mode_basis: mode_basis.clone(),
        n_max,
        states,
    })
}

fn enumerate_grade(m: usize, remaining: u32, mode: usize, current: &mut [u32], out: &mut Vec<OccupationVector>) {
    if mode == m - 1 {
        current[mode] = remaining;
        out.push(OccupationVector::new(current.to_vec()));
        current[mode] = 0;
        return;
    }
    // descending first occupancy gives descending lexicographic order
    for occ in (0..=remaining).rev() {
        current[mode] = occ;
        enumerate_grade(m, remaining - occ, mode + 1, current, out);
    }
    current[mode] = 0;
}

impl<S: Scalar> FockBasis<S> {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn n_modes(&self) -> usize {
        self.mode_basis.len()
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn mode_basis(&self) -> &ModeBasis<S> {
        &self.mode_basis
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &OccupationVector {
        &self.states[i]
    }

    /// Index of the vacuum (always 0).
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Ordinal of an occupation vector, if it lies in the truncated basis.
    pub fn index_of(&self, occ: &[u32]) -> Option<usize> {
        if occ.len() != self.n_modes() {
            return None;
        }
        let total: u32 = occ.iter().sum();
        if total > self.n_max {
            return None;
        }
        self.states
            .binary_search_by(|probe| state_cmp(&probe.occupations, occ))
            .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mb(m: usize) -> ModeBasis<f64> {
        let pairs: Vec<(f64, f64)> = (0..m).map(|j| (0.1 + 0.2 * j as f64, 0.2)).collect();
        ModeBasis::new(&pairs, 0.0, 1.0 + 0.2 * m as f64).unwrap()
    }

    #[test]
    fn dimension_two_modes_cap_two() {
        // states 00,10,01,20,11,02
        let basis = build_fock_basis(&mb(2), 2).unwrap();
        assert_eq!(basis.dim(), 6);
        let expected: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&basis.state(i).occupations, e);
        }
    }

    #[test]
    fn vacuum_only() {
        let mbv = ModeBasis::new(&[(0.5, 1.0)], 0.0, 1.0).unwrap();
        let basis = build_fock_basis(&mbv, 0).unwrap();
        assert_eq!(basis.dim(), 1);
        assert_eq!(basis.state(0).total, 0);
    }

    /// Direct enumeration oracle for the dimension formula.
    fn count_states_oracle(m: usize, n_max: u32) -> usize {
        fn rec(m: usize, left: u32) -> usize {
            if m == 1 {
                return 1;
            }
            (0..=left).map(|o| rec(m - 1, left - o)).sum()
        }
        (0..=n_max).map(|g| rec(m, g)).sum()
    }

    #[test]
    fn dimension_matches_enumeration_oracle() {
        let basis = build_fock_basis(&mb(3).with_ir_cutoff(0.0).unwrap(), 4).unwrap();
        assert_eq!(basis.dim(), 35); // C(7,3)
        assert_eq!(basis.dim(), count_states_oracle(3, 4));
        for (m, n) in [(2usize, 3u32), (4, 2), (4, 3)] {
            let b = build_fock_basis(&mb(m), n).unwrap();
            assert_eq!(b.dim(), count_states_oracle(m, n));
        }
    }

    #[test]
    fn index_roundtrip() {
        let basis = build_fock_basis(&mb(4), 3).unwrap();
        for i in 0..basis.dim() {
            let occ = basis.state(i).occupations.clone();
            assert_eq!(basis.index_of(&occ), Some(i));
        }
        assert_eq!(basis.index_of(&[4, 0, 0, 0]), None);
    }

    #[test]
    fn overflow_guard() {
        let err = build_fock_basis_with_cap(&mb(8), 8, 100).unwrap_err();
        match err {
            CoreError::DimensionOverflow { .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn soft_split_and_uniform_spacing() {
        let basis = ModeBasis::<f64>::uniform_symmetric(4, 1.0, 0.3).unwrap();
        // momenta -0.75, -0.25, 0.25, 0.75; soft = |k| < 0.3
        assert_eq!(basis.soft_set(), &[1, 2]);
        assert_eq!(basis.interacting_set(), &[0, 3]);
        assert!(basis.uniform_spacing().is_some());
        let total = basis.soft_set().len() + basis.interacting_set().len();
        assert_eq!(total, basis.len());
    }
}
