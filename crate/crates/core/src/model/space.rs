//! Electron configuration space: enumeration of grid configurations for
//! one or two electrons (plus the optional two-level factor), electron
//! coordinate norms, and the antisymmetric reduction.

use crate::fock::FockOperator;
use crate::model::grid::ElectronGrid;
use crate::model::spec::{ModelSpec, Statistics};
use crate::scalar::Scalar;

/// Reduced electron-side basis. An electron index runs over
/// `configs × spin_levels`; the field factor is appended after it.
#[derive(Debug, Clone)]
pub struct ElectronSpace<S: Scalar> {
    grid: ElectronGrid<S>,
    n_electrons: usize,
    statistics: Statistics,
    spin_levels: usize,
    /// Grid-point indices per configuration (antisymmetric: ordered pairs i<j).
    configs: Vec<Vec<usize>>,
    /// `|X| = (Σ x_j²)^{1/2}` per configuration.
    abs_x: Vec<S>,
}

impl<S: Scalar> ElectronSpace<S> {
    pub fn from_spec(spec: &ModelSpec<S>) -> Self {
        let n = spec.grid.points();
        let spin_levels = if spec.coupling.spin_surrogate_g != S::zero() {
            2
        } else {
            1
        };
        let configs: Vec<Vec<usize>> = match (spec.n_electrons, spec.statistics) {
            (0, _) => vec![Vec::new()],
            (1, _) => (0..n).map(|i| vec![i]).collect(),
            (2, Statistics::Distinguishable) => {
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        out.push(vec![i, j]);
                    }
                }
                out
            }
            (2, Statistics::SpatiallyAntisymmetric) => {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push(vec![i, j]);
                    }
                }
                out
            }
            _ => unreachable!("validated electron count"),
        };
        let coords = spec.grid.coordinates();
        let abs_x = configs
            .iter()
            .map(|cfg| {
                cfg.iter()
                    .map(|&i| coords[i] * coords[i])
                    .fold(S::zero(), |a, b| a + b)
                    .sqrt()
            })
            .collect();
        Self {
            grid: spec.grid,
            n_electrons: spec.n_electrons,
            statistics: spec.statistics,
            spin_levels,
            configs,
            abs_x,
        }
    }

    pub fn grid(&self) -> &ElectronGrid<S> {
        &self.grid
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn spin_levels(&self) -> usize {
        self.spin_levels
    }

    pub fn n_configs(&self) -> usize {
        self.configs.len()
    }

    /// Electron-side dimension including the spin factor.
    pub fn dim(&self) -> usize {
        self.configs.len() * self.spin_levels
    }

    pub fn config(&self, c: usize) -> &[usize] {
        &self.configs[c]
    }

    /// `|X|` of the configuration underlying electron index `e`.
    pub fn abs_x(&self, e: usize) -> S {
        self.abs_x[e / self.spin_levels]
    }

    /// σ_z sign of electron index `e` (+1 without the surrogate factor).
    pub fn spin_sign(&self, e: usize) -> S {
        if self.spin_levels == 1 || e % 2 == 0 {
            S::one()
        } else {
            -S::one()
        }
    }

    pub fn config_of_index(&self, e: usize) -> usize {
        e / self.spin_levels
    }

    pub fn index_of(&self, cfg: usize, spin: usize) -> usize {
        cfg * self.spin_levels + spin
    }

    /// Diagonal electron operator from a function of `|X|`, as a vector over
    /// electron indices.
    pub fn diag_of_abs_x(&self, f: impl Fn(S) -> S) -> Vec<S> {
        (0..self.dim()).map(|e| f(self.abs_x(e))).collect()
    }

    /// Electron indices with `|X| ≥ r` (the Dirichlet-restricted set).
    pub fn indices_outside(&self, r: S) -> Vec<usize> {
        (0..self.dim()).filter(|&e| self.abs_x(e) >= r).collect()
    }

}

/// Rectangular sparse map used for the antisymmetric reduction
/// (rows: reduced pairs, cols: full product configurations).
pub struct ReductionMap<S: Scalar> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, S)>,
}

impl<S: Scalar> ReductionMap<S> {
    /// `B` with `B[(i<j), i·n+j] = 1/√2`, `B[(i<j), j·n+i] = −1/√2`.
    pub fn antisymmetric_pairs(n: usize) -> Self {
        let mut entries = Vec::new();
        let mut row = 0usize;
        let inv_sqrt2 = S::one() / S::of(2.0).sqrt();
        for i in 0..n {
            for j in (i + 1)..n {
                entries.push((row, i * n + j, inv_sqrt2));
                entries.push((row, j * n + i, -inv_sqrt2));
                row += 1;
            }
        }
        Self {
            rows: row,
            cols: n * n,
            entries,
        }
    }

    /// Sandwich a full-space operator: `B M B†` (dense-free triple product).
    /// `block` is the dimension of an appended tensor factor replicated
    /// identically (the field space).
    pub fn sandwich(&self, m: &FockOperator<S>, block: usize) -> FockOperator<S> {
        assert_eq!(m.dim(), self.cols * block);
        // col-indexed lookup of B entries
        let mut by_col: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            by_col[c].push((r, v));
        }
        let mut triplets = Vec::new();
        for (gr, gc, val) in m.entries() {
            let (cr, fr) = (gr / block, gr % block);
            let (cc, fc) = (gc / block, gc % block);
            for &(rr, vr) in &by_col[cr] {
                for &(rc, vc) in &by_col[cc] {
                    triplets.push((
                        rr * block + fr,
                        rc * block + fc,
                        val.scale(vr * vc),
                    ));
                }
            }
        }
        FockOperator::from_triplets(self.rows * block, triplets)
    }
}
