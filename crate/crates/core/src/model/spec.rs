//! Model description: potentials, coupling, statistics, and the complete
//! spec from which Hamiltonians are assembled.

use crate::error::{CoreError, Result};
use crate::fock::{fock_dimension, ModeBasis};
use crate::model::grid::ElectronGrid;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// External and pair potential as samples on the grid geometry.
///
/// `v` is sampled at the grid points; `w` is sampled per separation
/// `|i-j|·h` (the pair potential is taken even).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpec<S: Scalar> {
    pub v: Vec<S>,
    pub w: Vec<S>,
    pub decay_radius: S,
}

impl<S: Scalar> PotentialSpec<S> {
    pub fn zero(grid: &ElectronGrid<S>) -> Self {
        Self {
            v: vec![S::zero(); grid.points()],
            w: vec![S::zero(); grid.points()],
            decay_radius: S::zero(),
        }
    }

    /// Sample `v` and the (even) pair potential from closures.
    pub fn from_fns(
        grid: &ElectronGrid<S>,
        vf: impl Fn(S) -> S,
        wf: impl Fn(S) -> S,
        decay_radius: S,
    ) -> Self {
        let v = grid.coordinates().into_iter().map(&vf).collect();
        let h = grid.spacing();
        let w = (0..grid.points())
            .map(|d| wf(S::of(d as f64) * h))
            .collect();
        Self {
            v,
            w,
            decay_radius,
        }
    }

    /// Check finiteness and the decay envelope: beyond `decay_radius`,
    /// `|v|` (and `|w|`) must be nonincreasing in distance.
    pub fn validate(&self, grid: &ElectronGrid<S>) -> Result<()> {
        if self.v.len() != grid.points() {
            return Err(CoreError::ShapeMismatch {
                expected: grid.points(),
                got: self.v.len(),
            });
        }
        for x in self.v.iter().chain(self.w.iter()) {
            if !x.is_finite() {
                return Err(CoreError::InvalidModel("potential sample not finite".into()));
            }
        }
        let coords = grid.coordinates();
        // right side outward
        let mut prev: Option<S> = None;
        for i in 0..grid.points() {
            if coords[i] > self.decay_radius {
                if let Some(p) = prev {
                    if self.v[i].abs() > p + S::of(1e-12) {
                        return Err(CoreError::InvalidModel(format!(
                            "external potential grows beyond the decay radius at grid point {i}"
                        )));
                    }
                }
                prev = Some(self.v[i].abs());
            }
        }
        // left side outward
        prev = None;
        for i in (0..grid.points()).rev() {
            if coords[i] < -self.decay_radius {
                if let Some(p) = prev {
                    if self.v[i].abs() > p + S::of(1e-12) {
                        return Err(CoreError::InvalidModel(format!(
                            "external potential grows beyond the decay radius at grid point {i}"
                        )));
                    }
                }
                prev = Some(self.v[i].abs());
            }
        }
        let h = grid.spacing();
        prev = None;
        for (d, wv) in self.w.iter().enumerate() {
            if S::of(d as f64) * h > self.decay_radius {
                if let Some(p) = prev {
                    if wv.abs() > p + S::of(1e-12) {
                        return Err(CoreError::InvalidModel(format!(
                            "pair potential grows beyond the decay radius at separation index {d}"
                        )));
                    }
                }
                prev = Some(wv.abs());
            }
        }
        Ok(())
    }
}

/// Field-coupling parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CouplingSpec<S: Scalar> {
    pub alpha: S,
    pub uv_cutoff: S,
    pub ir_cutoff: S,
    /// Optional two-level surrogate strength (no acceptance weight).
    pub spin_surrogate_g: S,
    /// Global phase on the form factors (gauge-covariance experiments).
    pub form_phase: S,
}

impl<S: Scalar> CouplingSpec<S> {
    pub fn new(alpha: S, uv_cutoff: S, ir_cutoff: S) -> Result<Self> {
        let c = Self {
            alpha,
            uv_cutoff,
            ir_cutoff,
            spin_surrogate_g: S::zero(),
            form_phase: S::zero(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha < S::zero() {
            return Err(CoreError::InvalidModel("coupling strength must be nonnegative".into()));
        }
        if self.ir_cutoff < S::zero() || self.uv_cutoff <= S::zero() {
            return Err(CoreError::InvalidModel(
                "cutoffs must satisfy uv > 0 and ir >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Electron statistics for the two-electron sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statistics {
    Distinguishable,
    SpatiallyAntisymmetric,
}

/// Complete description of a discretized electron+field system.
#[derive(Debug, Clone)]
pub struct ModelSpec<S: Scalar> {
    pub n_electrons: usize,
    pub statistics: Statistics,
    pub grid: ElectronGrid<S>,
    pub potentials: PotentialSpec<S>,
    pub coupling: CouplingSpec<S>,
    pub mode_basis: ModeBasis<S>,
    pub n_max: u32,
}

impl<S: Scalar> ModelSpec<S> {
    pub fn new(
        n_electrons: usize,
        statistics: Statistics,
        grid: ElectronGrid<S>,
        potentials: PotentialSpec<S>,
        coupling: CouplingSpec<S>,
        mode_basis: ModeBasis<S>,
        n_max: u32,
    ) -> Result<Self> {
        let spec = Self {
            n_electrons,
            statistics,
            grid,
            potentials,
            coupling,
            mode_basis,
            n_max,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_electrons > 2 {
            return Err(CoreError::InvalidModel(
                "at most two electrons are supported".into(),
            ));
        }
        self.potentials.validate(&self.grid)?;
        self.coupling.validate()?;
        let tol = S::of(1e-12);
        if (self.mode_basis.ir_cutoff() - self.coupling.ir_cutoff).abs() > tol
            || (self.mode_basis.uv_cutoff() - self.coupling.uv_cutoff).abs()
                > tol * self.coupling.uv_cutoff.max(S::one())
        {
            return Err(CoreError::InvalidModel(
                "mode basis cutoffs do not match the coupling cutoffs".into(),
            ));
        }
        if self.coupling.spin_surrogate_g != S::zero() && self.n_electrons != 1 {
            return Err(CoreError::InvalidModel(
                "the two-level surrogate is wired for single-electron models".into(),
            ));
        }
        let field_dim = fock_dimension(self.mode_basis.len(), self.n_max);
        let spin = if self.coupling.spin_surrogate_g != S::zero() {
            2u128
        } else {
            1
        };
        let elec: u128 = (self.grid.points() as u128).pow(self.n_electrons as u32).max(1);
        let dim = elec * field_dim * spin;
        let cap = crate::fock::DEFAULT_DIMENSION_CAP as u128;
        if dim > cap {
            return Err(CoreError::DimensionOverflow {
                dim,
                cap: cap as usize,
            });
        }
        Ok(())
    }

    /// Same model with a different IR cutoff in the coupling: amplitudes on
    /// modes below the cutoff are zeroed while the field energy keeps them.
    /// `mu >= uv` leaves a fully decoupled field.
    pub fn with_ir_cutoff(&self, mu: S) -> Result<Self> {
        let mut out = self.clone();
        out.coupling.ir_cutoff = mu;
        out.mode_basis = self.mode_basis.with_ir_cutoff(mu)?;
        out.validate()?;
        Ok(out)
    }

    /// Cluster variant with a different electron count (0 is the empty
    /// cluster carrying only the field).
    pub fn with_electron_count(&self, n: usize) -> Result<Self> {
        let mut out = self.clone();
        out.n_electrons = n;
        out.validate()?;
        Ok(out)
    }

    /// External potential dropped, pair potential retained.
    pub fn without_external_potential(&self) -> Self {
        let mut out = self.clone();
        out.potentials.v = vec![S::zero(); self.grid.points()];
        out
    }

    pub fn with_n_max(&self, n_max: u32) -> Result<Self> {
        let mut out = self.clone();
        out.n_max = n_max;
        out.validate()?;
        Ok(out)
    }

    pub fn with_alpha(&self, alpha: S) -> Result<Self> {
        let mut out = self.clone();
        out.coupling.alpha = alpha;
        out.validate()?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> ElectronGrid<f64> {
        ElectronGrid::new(6.0, 16).unwrap()
    }

    #[test]
    fn decay_envelope_accepts_well() {
        let g = grid();
        let p = PotentialSpec::from_fns(&g, |x: f64| -3.0 * (-x * x).exp(), |_| 0.0, 1.0);
        assert!(p.validate(&g).is_ok());
    }

    #[test]
    fn decay_envelope_rejects_growth() {
        let g = grid();
        let p = PotentialSpec::from_fns(&g, |x: f64| x * x, |_| 0.0, 1.0);
        assert!(p.validate(&g).is_err());
    }

    #[test]
    fn cutoff_consistency_enforced() {
        let g = grid();
        let modes = ModeBasis::uniform_symmetric(4, 1.0, 0.0).unwrap();
        let coupling = CouplingSpec::new(0.1, 1.0, 0.3).unwrap();
        let spec = ModelSpec::new(
            1,
            Statistics::Distinguishable,
            g,
            PotentialSpec::zero(&g),
            coupling,
            modes,
            2,
        );
        assert!(spec.is_err()); // mode basis has ir = 0, coupling has 0.3
    }
}
