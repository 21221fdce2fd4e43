//! Hamiltonian variants: dropped external potential, Dirichlet
//! restriction outside a ball, and IR-cutoff coupling variants.

use crate::error::{CoreError, Result};
use crate::fock::FockOperator;
use crate::model::assemble::{assemble_hamiltonian, AssembledHamiltonian};
use crate::model::spec::ModelSpec;
use crate::scalar::Scalar;

/// Re-assemble with the external potential removed; the pair potential and
/// every other part are unchanged.
pub fn drop_external_potential<S: Scalar>(
    h: &AssembledHamiltonian<S>,
) -> Result<AssembledHamiltonian<S>> {
    assemble_hamiltonian(&h.spec().without_external_potential())
}

/// IR-cutoff variant of a model: coupling amplitudes vanish on modes with
/// frequency below `mu` while the field energy keeps all modes.
pub fn ir_cutoff_variant<S: Scalar>(spec: &ModelSpec<S>, mu: S) -> Result<ModelSpec<S>> {
    if mu < S::zero() {
        return Err(CoreError::InvalidInput("ir cutoff must be nonnegative".into()));
    }
    spec.with_ir_cutoff(mu)
}

/// Operator restricted to electron configurations with `|X| ≥ r`,
/// with the index bookkeeping needed to map back.
#[derive(Debug, Clone)]
pub struct RestrictedHamiltonian<S: Scalar> {
    pub op: FockOperator<S>,
    /// Electron indices kept (into the parent electron space).
    pub kept_electron: Vec<usize>,
    pub r: S,
    pub field_dim: usize,
}

/// Remove all rows/columns whose electron configuration satisfies
/// `|X| < r`. `r = 0` keeps everything.
pub fn dirichlet_restrict<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    r: S,
) -> Result<RestrictedHamiltonian<S>> {
    let kept_electron = h.electron().indices_outside(r);
    if kept_electron.is_empty() {
        return Err(CoreError::EmptySubspace {
            r: r.to_f64_lossy(),
        });
    }
    let df = h.field_dim();
    let mut kept_global = Vec::with_capacity(kept_electron.len() * df);
    for &e in &kept_electron {
        for fi in 0..df {
            kept_global.push(e * df + fi);
        }
    }
    let op = h.total().restrict(&kept_global);
    Ok(RestrictedHamiltonian {
        op,
        kept_electron,
        r,
        field_dim: df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeBasis;
    use crate::model::grid::ElectronGrid;
    use crate::model::spec::{CouplingSpec, PotentialSpec, Statistics};
    use crate::spectral::{eigs_lowest, SolverOptions};

    fn spec_with_well(alpha: f64) -> ModelSpec<f64> {
        let grid = ElectronGrid::new(6.0, 20).unwrap();
        let modes = ModeBasis::uniform_symmetric(2, 1.0, 0.0).unwrap();
        ModelSpec::new(
            1,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::from_fns(&grid, |x: f64| -4.0 * (-x * x / 0.8).exp(), |_| 0.0, 2.0),
            CouplingSpec::new(alpha, 1.0, 0.0).unwrap(),
            modes,
            1,
        )
        .unwrap()
    }

    #[test]
    fn drop_v_identity_when_v_zero() {
        let mut spec = spec_with_well(0.1);
        spec.potentials.v = vec![0.0; 20];
        let h = assemble_hamiltonian(&spec).unwrap();
        let dropped = drop_external_potential(&h).unwrap();
        assert!(h.total().sub(dropped.total()).max_abs() < 1e-15);
    }

    #[test]
    fn drop_v_bounded_shift_and_binding() {
        let spec = spec_with_well(0.05);
        let h = assemble_hamiltonian(&spec).unwrap();
        let h0 = drop_external_potential(&h).unwrap();
        let e = eigs_lowest(h.total(), 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        let e0 = eigs_lowest(h0.total(), 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        let vmax_plus: f64 = spec.potentials.v.iter().cloned().fold(0.0, f64::max);
        let vmax_minus: f64 = spec.potentials.v.iter().cloned().fold(0.0, f64::min);
        assert!(e0 <= e + vmax_plus.max(0.0) - vmax_minus.min(0.0) + 1e-10);
        assert!(e0 >= e, "deep well binds: E0 {e0} should exceed E {e}");
        assert!(e0 - e > 0.5, "binding energy should be visible");
    }

    #[test]
    fn restrict_r_zero_is_identity() {
        let spec = spec_with_well(0.0);
        let h = assemble_hamiltonian(&spec).unwrap();
        let r = dirichlet_restrict(&h, 0.0).unwrap();
        assert_eq!(r.op.dim(), h.dim());
        assert!(r.op.sub(h.total()).max_abs() < 1e-15);
    }

    #[test]
    fn restrict_dimension_counting() {
        let spec = spec_with_well(0.0);
        let h = assemble_hamiltonian(&spec).unwrap();
        let r = 2.5;
        let restricted = dirichlet_restrict(&h, r).unwrap();
        let count = (0..20)
            .filter(|&i| spec.grid.coordinate(i).abs() >= r)
            .count();
        assert_eq!(restricted.op.dim(), count * h.field_dim());
    }

    #[test]
    fn restricted_min_eigenvalue_nondecreasing() {
        let spec = spec_with_well(0.1);
        let h = assemble_hamiltonian(&spec).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for r in [0.0, 1.0, 2.0, 3.0] {
            let restricted = dirichlet_restrict(&h, r).unwrap();
            let op = restricted.op.clone().into_hermitian_checked().unwrap();
            let e = eigs_lowest(&op, 1, SolverOptions::default())
                .unwrap()
                .eigenvalues[0];
            assert!(e >= prev - 1e-10, "r={r}: {e} < {prev}");
            prev = e;
        }
    }

    #[test]
    fn restrict_everything_errors() {
        let spec = spec_with_well(0.0);
        let h = assemble_hamiltonian(&spec).unwrap();
        match dirichlet_restrict(&h, 100.0) {
            Err(CoreError::EmptySubspace { .. }) => {}
            other => panic!("expected empty subspace, got {other:?}"),
        }
    }

    #[test]
    fn ir_variant_zero_mu_identical() {
        let spec = spec_with_well(0.2);
        let v0 = ir_cutoff_variant(&spec, 0.0).unwrap();
        let h0 = assemble_hamiltonian(&v0).unwrap();
        let h = assemble_hamiltonian(&spec).unwrap();
        assert!(h.total().sub(h0.total()).max_abs() < 1e-15);
    }

    #[test]
    fn ir_variant_full_decoupling() {
        let spec = spec_with_well(0.3);
        let decoupled = ir_cutoff_variant(&spec, 2.0).unwrap(); // mu >= uv
        let h = assemble_hamiltonian(&decoupled).unwrap();
        let e = eigs_lowest(h.total(), 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        // alpha-independent electron energy
        let alpha_zero = assemble_hamiltonian(&spec.with_alpha(0.0).unwrap()).unwrap();
        let e0 = eigs_lowest(alpha_zero.total(), 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        assert!((e - e0).abs() < 1e-10);
    }
}
