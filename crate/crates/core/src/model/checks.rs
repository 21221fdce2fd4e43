//! Numerical certificates on assembled Hamiltonians: soft-sector
//! reduction, the lattice localization identity, and field-bound
//! operator inequalities with derived constants.

use crate::error::{CoreError, Result};
use crate::fock::{annihilation_op, creation_op, FockOperator, PartTag};
use crate::model::assemble::{build_form_factor, AssembledHamiltonian};
use crate::scalar::Scalar;
use crate::spectral::{eigs_lowest, SolverOptions};
use serde::Serialize;

/// Ground energies of the full operator and of its soft-vacuum sector.
#[derive(Debug, Clone, Serialize)]
pub struct SoftSectorReport<S: Scalar> {
    pub e_full: S,
    pub e_soft_vacuum: S,
    pub difference: S,
    pub soft_mode_count: usize,
    pub soft_sector_dim: usize,
}

/// Verify that the ground energy of an IR-cutoff Hamiltonian is attained
/// in the sector with no soft photons (they are decoupled and cost
/// `ω > 0` each).
pub fn soft_sector_check<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    opts: SolverOptions<S>,
) -> Result<SoftSectorReport<S>> {
    let spec = h.spec();
    if spec.coupling.ir_cutoff <= S::zero() {
        return Err(CoreError::InvalidInput(
            "soft-sector check needs a positive IR cutoff".into(),
        ));
    }
    let basis = h.fock_basis();
    let soft = spec.mode_basis.soft_set().to_vec();
    let df = basis.dim();
    let kept_field: Vec<usize> = (0..df)
        .filter(|&fi| {
            soft.iter()
                .all(|&k| basis.state(fi).occupations[k] == 0)
        })
        .collect();
    let mut kept_global = Vec::with_capacity(h.electron().dim() * kept_field.len());
    for e in 0..h.electron().dim() {
        for &fi in &kept_field {
            kept_global.push(e * df + fi);
        }
    }
    let restricted = h.total().restrict(&kept_global).assume_hermitian();
    let e_full = eigs_lowest(h.total(), 1, opts)?.eigenvalues[0];
    let e_soft_vacuum = eigs_lowest(&restricted, 1, opts)?.eigenvalues[0];
    Ok(SoftSectorReport {
        e_full,
        e_soft_vacuum,
        difference: e_soft_vacuum - e_full,
        soft_mode_count: soft.len(),
        soft_sector_dim: restricted.dim(),
    })
}

/// `L(f) = 2 f M f − f² M − M f²` for a diagonal-in-`|X|` weight given as
/// samples over the electron axis, on an arbitrary operator sharing the
/// same product structure.
pub fn localization_error_of<S: Scalar>(
    op: &FockOperator<S>,
    f_electron: &[S],
    field_dim: usize,
) -> FockOperator<S> {
    let dim = op.dim();
    debug_assert_eq!(f_electron.len() * field_dim, dim);
    let mut diag = vec![S::zero(); dim];
    let mut diag2 = vec![S::zero(); dim];
    for (e, &fe) in f_electron.iter().enumerate() {
        for fi in 0..field_dim {
            diag[e * field_dim + fi] = fe;
            diag2[e * field_dim + fi] = fe * fe;
        }
    }
    let f_op = FockOperator::from_real_diag(&diag);
    let f2_op = FockOperator::from_real_diag(&diag2);
    let fmf = f_op.matmul(op).matmul(&f_op).scaled_real(S::of(2.0));
    fmf.sub(&f2_op.matmul(op)).sub(&op.matmul(&f2_op))
}

/// Lattice localization error of the assembled Hamiltonian for a radial
/// weight `f(|X|)`. Only the kinetic part contributes: potential, field
/// and the `A(x)²` interaction commute with `f` exactly.
pub fn localization_error<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    f_electron: &[S],
) -> Result<FockOperator<S>> {
    if f_electron.len() != h.electron().dim() {
        return Err(CoreError::ShapeMismatch {
            expected: h.electron().dim(),
            got: f_electron.len(),
        });
    }
    for v in f_electron {
        if !v.is_finite() {
            return Err(CoreError::InvalidInput("weight sample not finite".into()));
        }
    }
    // radial check: equal |X| forces equal f
    let space = h.electron();
    let mut pairs: Vec<(S, S)> = (0..space.dim())
        .map(|e| (space.abs_x(e), f_electron[e]))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for w in pairs.windows(2) {
        let scale = w[0].0.abs().max(S::one());
        if (w[1].0 - w[0].0).abs() <= S::of(1e-12) * scale
            && (w[1].1 - w[0].1).abs() > S::of(1e-10) * w[0].1.abs().max(S::one())
        {
            return Err(CoreError::InvalidInput(
                "weight is not radial in |X|".into(),
            ));
        }
    }
    Ok(localization_error_of(h.total(), f_electron, h.field_dim()))
}

/// Norm bound on `L(f)`: `max_edge ((Δf)/h)²` over kinetic-coupled
/// configuration pairs, times the lattice prefactor
/// `2 + √α·h·max ‖A(x_i)+A(x_j)‖_rowsum` (the second term is the
/// cross-term correction, absent at α = 0).
pub fn localization_norm_bound<S: Scalar>(h: &AssembledHamiltonian<S>, f_electron: &[S]) -> S {
    let spec = h.spec();
    let space = h.electron();
    let hsp = spec.grid.spacing();
    let n = spec.grid.points();
    let spin = space.spin_levels();
    let mut max_grad_sq = S::zero();
    // edges: configurations differing by one coordinate step
    for c in 0..space.n_configs() {
        let cfg = space.config(c).to_vec();
        for (j, &ij) in cfg.iter().enumerate() {
            if ij + 1 < n {
                let mut ncfg = cfg.clone();
                ncfg[j] = ij + 1;
                if let Some(nc) = neighbor_index(space, &ncfg) {
                    for s in 0..spin {
                        let e = space.index_of(c, s);
                        let ne = space.index_of(nc, s);
                        let grad = (f_electron[ne] - f_electron[e]) / hsp;
                        max_grad_sq = max_grad_sq.max(grad * grad);
                    }
                }
            }
        }
    }
    let cross_correction = if spec.coupling.alpha > S::zero() {
        let mut max_rowsum = S::zero();
        let basis = h.fock_basis();
        for i in 0..n.saturating_sub(1) {
            let sum = coupling_op(h, i).add(&coupling_op(h, i + 1));
            let mut rs = S::zero();
            for r in 0..sum.dim() {
                let row: S = sum.row(r).map(|(_, v)| v.norm_sqr().sqrt()).fold(S::zero(), |a, b| a + b);
                rs = rs.max(row);
            }
            let _ = basis;
            max_rowsum = max_rowsum.max(rs);
        }
        spec.coupling.alpha.sqrt() * hsp * max_rowsum
    } else {
        S::zero()
    };
    (S::of(2.0) + cross_correction) * max_grad_sq
}

/// `A(x_i)` on the field space for grid point `i`.
fn coupling_op<S: Scalar>(h: &AssembledHamiltonian<S>, i: usize) -> FockOperator<S> {
    let spec = h.spec();
    let g = build_form_factor(&spec.coupling, spec.grid.coordinate(i), &spec.mode_basis);
    let basis = h.fock_basis();
    creation_op(&g, basis)
        .expect("form factor matches basis")
        .add(&annihilation_op(&g, basis).expect("form factor matches basis"))
}

fn neighbor_index<S: Scalar>(space: &crate::model::space::ElectronSpace<S>, cfg: &[usize]) -> Option<usize> {
    let n = space.grid().points();
    match cfg.len() {
        0 => Some(0),
        1 => Some(cfg[0]),
        2 => match space.statistics() {
            crate::model::spec::Statistics::Distinguishable => Some(cfg[0] * n + cfg[1]),
            crate::model::spec::Statistics::SpatiallyAntisymmetric => {
                // pairs are stored i<j; a step can leave the wedge
                if cfg[0] < cfg[1] {
                    let (i, j) = (cfg[0], cfg[1]);
                    Some((0..i).map(|a| n - 1 - a).sum::<usize>() + (j - i - 1))
                } else {
                    None
                }
            }
        },
        _ => None,
    }
}

/// Constants and margins of the operator inequalities
/// `A(x)² ⪯ c₁·H_f + c₂` and `Σp² ⪯ C(Σ(p+√αA)² + H_f) + D`.
#[derive(Debug, Clone, Serialize)]
pub struct FieldBoundReport<S: Scalar> {
    pub c1: S,
    pub c2: S,
    /// Worst (most negative) min-eigenvalue of `c₁H_f + c₂ − A(x)²` over x.
    pub coupling_margin: S,
    pub big_c: S,
    pub big_d: S,
    /// Min-eigenvalue of `C(Σ(p+√αA)² + H_f) + D − Σp²`.
    pub kinetic_margin: S,
    pub slack: S,
    pub pass: bool,
}

/// Certify the field bounds with constants derived from the form-factor
/// norms: `c₁ = 4‖ω^{-1/2}G‖²`, `c₂ = 2‖G‖² + c₁`,
/// `C = max(2, 2αN·c₁)`, `D = 2αN·c₂`.
pub fn field_bound_check<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    epsilon: S,
) -> Result<FieldBoundReport<S>> {
    if epsilon <= S::zero() {
        return Err(CoreError::InvalidInput("slack must be positive".into()));
    }
    let spec = h.spec();
    let modes = &spec.mode_basis;
    let g0 = build_form_factor(&spec.coupling, S::zero(), modes);
    let norm2 = g0.norm_sqr();
    let norm2_over_omega = g0
        .amplitudes()
        .iter()
        .zip(modes.modes())
        .filter(|(a, _)| a.norm_sqr() > S::zero())
        .fold(S::zero(), |acc, (a, m)| acc + a.norm_sqr() / m.frequency);
    let c1 = S::of(4.0) * norm2_over_omega;
    let c2 = S::of(2.0) * norm2 + c1;

    // per-x certificates on the field space
    let basis = h.fock_basis();
    let hf = crate::fock::dgamma(&modes.frequencies(), basis);
    let mut coupling_margin = S::infinity();
    if spec.coupling.alpha > S::zero() && spec.n_electrons > 0 {
        for i in 0..spec.grid.points() {
            let a = coupling_op(h, i);
            let m = hf
                .scaled_real(c1)
                .add(&FockOperator::identity(basis.dim()).scaled_real(c2))
                .sub(&a.matmul(&a))
                .into_hermitian_checked()?;
            let min_eig = eigs_lowest(&m, 1, SolverOptions::default())?.eigenvalues[0];
            coupling_margin = coupling_margin.min(min_eig);
        }
    } else {
        // A = 0: the check is c₂ ≥ 0
        coupling_margin = c2;
    }

    // kinetic inequality on the full space
    let alpha_n = spec.coupling.alpha * S::of(spec.n_electrons as f64);
    let big_c = S::of(2.0).max(S::of(2.0) * alpha_n * c1);
    let big_d = S::of(2.0) * alpha_n * c2;
    let covariant = h
        .part(PartTag::Kinetic)
        .add(&h.coupling_square_op())
        .add(h.part(PartTag::Field));
    let q = covariant
        .scaled_real(big_c)
        .add(&FockOperator::identity(h.dim()).scaled_real(big_d))
        .sub(&h.electron_kinetic_op())
        .into_hermitian_checked()?;
    let kinetic_margin = eigs_lowest(&q, 1, SolverOptions::default())?.eigenvalues[0];

    let pass = coupling_margin >= -epsilon && kinetic_margin >= -epsilon;
    let report = FieldBoundReport {
        c1,
        c2,
        coupling_margin,
        big_c,
        big_d,
        kinetic_margin,
        slack: epsilon,
        pass,
    };
    if !pass {
        return Err(CoreError::CertificationFailure {
            what: "field bound".into(),
            margin: coupling_margin.min(kinetic_margin).to_f64_lossy(),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeBasis;
    use crate::model::assemble::assemble_hamiltonian;
    use crate::model::grid::ElectronGrid;
    use crate::model::spec::{CouplingSpec, ModelSpec, PotentialSpec, Statistics};

    fn spec(alpha: f64, mu: f64, m: usize, n_max: u32) -> ModelSpec<f64> {
        let grid = ElectronGrid::new(5.0, 12).unwrap();
        let modes = ModeBasis::uniform_symmetric(m, 1.0, mu).unwrap();
        ModelSpec::new(
            1,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::from_fns(&grid, |x: f64| -2.0 * (-x * x).exp(), |_| 0.0, 2.0),
            CouplingSpec::new(alpha, 1.0, mu).unwrap(),
            modes,
            n_max,
        )
        .unwrap()
    }

    #[test]
    fn soft_sector_ground_agrees() {
        let h = assemble_hamiltonian(&spec(0.2, 0.3, 4, 2)).unwrap();
        let report = soft_sector_check(&h, SolverOptions::default()).unwrap();
        assert_eq!(report.soft_mode_count, 2);
        assert!(report.soft_sector_dim < h.dim());
        assert!(
            report.difference.abs() < 1e-9,
            "soft vacuum sector misses the ground: {}",
            report.difference
        );
    }

    #[test]
    fn soft_photon_costs_exactly_its_frequency() {
        let h = assemble_hamiltonian(&spec(0.2, 0.3, 4, 2)).unwrap();
        let spec = h.spec();
        let soft = spec.mode_basis.soft_set();
        let k = soft[0];
        let omega = spec.mode_basis.mode(k).frequency;
        let basis = h.fock_basis();
        let df = basis.dim();
        // sector with exactly one photon in soft mode k, none in other soft modes
        let kept_field: Vec<usize> = (0..df)
            .filter(|&fi| {
                let occ = &basis.state(fi).occupations;
                occ[k] == 1 && soft.iter().all(|&s| s == k || occ[s] == 0)
            })
            .collect();
        let mut kept = Vec::new();
        for e in 0..h.electron().dim() {
            for &fi in &kept_field {
                kept.push(e * df + fi);
            }
        }
        let sector = h.total().restrict(&kept).assume_hermitian();
        let e_sector = eigs_lowest(&sector, 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        // reference: soft vacuum with the same interacting-photon budget
        // (one boson of the cap is spent on the soft photon)
        let kept_ref_field: Vec<usize> = (0..df)
            .filter(|&fi| {
                let occ = &basis.state(fi).occupations;
                occ.iter().sum::<u32>() + 1 <= basis.n_max()
                    && soft.iter().all(|&s| occ[s] == 0)
            })
            .collect();
        let mut kept_ref = Vec::new();
        for e in 0..h.electron().dim() {
            for &fi in &kept_ref_field {
                kept_ref.push(e * df + fi);
            }
        }
        let reference = h.total().restrict(&kept_ref).assume_hermitian();
        let e_ref = eigs_lowest(&reference, 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        assert!(
            (e_sector - e_ref - omega).abs() < 1e-9,
            "photon cost {} vs frequency {omega}",
            e_sector - e_ref
        );
    }

    #[test]
    fn localization_error_constant_f_vanishes() {
        let h = assemble_hamiltonian(&spec(0.2, 0.0, 2, 1)).unwrap();
        let f = vec![0.7; h.electron().dim()];
        let l = localization_error(&h, &f).unwrap();
        // exact zero up to floating-point association residue
        assert!(l.max_abs() < 1e-13 * h.total().max_abs());
    }

    #[test]
    fn localization_error_entrywise_oracle() {
        // explicit lattice double-commutator formula: L[g,g'] = -H[g,g']·(Δf)²
        let h = assemble_hamiltonian(&spec(0.3, 0.0, 2, 2)).unwrap();
        let space = h.electron();
        let f: Vec<f64> = space.diag_of_abs_x(|r| 0.4 * (1.0 + r * r).sqrt());
        let l = localization_error(&h, &f).unwrap();
        let df = h.field_dim();
        let oracle = h.total().map_entries(|gr, gc, v| {
            let de = f[gr / df] - f[gc / df];
            -v.scale(de * de)
        });
        let defect = l.sub(&oracle).max_abs();
        assert!(defect < 1e-10, "oracle defect {defect}");
    }

    #[test]
    fn parts_commuting_with_f_contribute_nothing() {
        let h = assemble_hamiltonian(&spec(0.3, 0.0, 2, 2)).unwrap();
        let f: Vec<f64> = h.electron().diag_of_abs_x(|r| (1.0 + r).ln());
        for tag in [PartTag::Potential, PartTag::Field, PartTag::Interaction] {
            let l = localization_error_of(h.part(tag), &f, h.field_dim());
            assert!(
                l.max_abs() < 1e-12,
                "{tag} part should commute with f, got {}",
                l.max_abs()
            );
        }
    }

    #[test]
    fn localization_norm_bound_zero_coupling_is_exact_gradient_bound() {
        let h = assemble_hamiltonian(&spec(0.0, 0.0, 2, 1)).unwrap();
        let f: Vec<f64> = h.electron().diag_of_abs_x(|r| 0.5 * (1.0 + r * r).sqrt());
        let l = localization_error(&h, &f).unwrap();
        let norm = l.singular_norm_est(3, 1e-10, 2000);
        let bound = localization_norm_bound(&h, &f);
        assert!(norm <= bound + 1e-10, "norm {norm} vs bound {bound}");
        // at alpha = 0 the bound is exactly 2·max discrete-gradient²
        let hsp = h.spec().grid.spacing();
        let mut maxg: f64 = 0.0;
        for i in 0..11 {
            let g = (f[i + 1] - f[i]) / hsp;
            maxg = maxg.max(g * g);
        }
        assert!((bound - 2.0 * maxg).abs() < 1e-12);
    }

    #[test]
    fn localization_norm_bound_holds_with_coupling() {
        let h = assemble_hamiltonian(&spec(0.3, 0.0, 2, 2)).unwrap();
        let f: Vec<f64> = h.electron().diag_of_abs_x(|r| 0.5 * (1.0 + r * r).sqrt());
        let l = localization_error(&h, &f).unwrap();
        let norm = l.singular_norm_est(3, 1e-10, 2000);
        let bound = localization_norm_bound(&h, &f);
        assert!(norm <= bound + 1e-10, "norm {norm} vs bound {bound}");
    }

    #[test]
    fn non_radial_weight_rejected() {
        let h = assemble_hamiltonian(&spec(0.0, 0.0, 2, 1)).unwrap();
        let mut f: Vec<f64> = h.electron().diag_of_abs_x(|r| r);
        f[0] += 0.3; // breaks the mirror symmetry
        assert!(localization_error(&h, &f).is_err());
    }

    #[test]
    fn field_bound_alpha_zero_trivial() {
        let h = assemble_hamiltonian(&spec(0.0, 0.0, 2, 1)).unwrap();
        let report = field_bound_check(&h, 1e-8).unwrap();
        assert!(report.pass);
        assert!(report.coupling_margin >= 0.0);
    }

    #[test]
    fn field_bound_single_mode_certified() {
        let grid = ElectronGrid::new(5.0, 10).unwrap();
        let modes = ModeBasis::new(&[(0.5, 0.5)], 0.0, 1.0).unwrap();
        let spec = ModelSpec::new(
            1,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::zero(&grid),
            CouplingSpec::new(0.2, 1.0, 0.0).unwrap(),
            modes,
            3,
        )
        .unwrap();
        let h = assemble_hamiltonian(&spec).unwrap();
        let report = field_bound_check(&h, 1e-8).unwrap();
        assert!(report.pass);
        assert!(report.coupling_margin >= -1e-8);
        assert!(report.kinetic_margin >= -1e-8);
    }

    #[test]
    fn constants_scale_with_doubled_form_factor() {
        // doubling G means quadrupled weights; c1, c2 scale by 4
        let grid = ElectronGrid::new(5.0, 10).unwrap();
        let mk = |wscale: f64| {
            let modes = ModeBasis::new(&[(0.5, 0.5 * wscale)], 0.0, 1.0).unwrap();
            let spec = ModelSpec::new(
                1,
                Statistics::Distinguishable,
                grid,
                PotentialSpec::zero(&grid),
                CouplingSpec::new(0.2, 1.0, 0.0).unwrap(),
                modes,
                3,
            )
            .unwrap();
            assemble_hamiltonian(&spec).unwrap()
        };
        let r1 = field_bound_check(&mk(1.0), 1e-8).unwrap();
        let r4 = field_bound_check(&mk(4.0), 1e-8).unwrap();
        assert!((r4.c1 - 4.0 * r1.c1).abs() < 1e-12);
        assert!((r4.c2 - 4.0 * r1.c2).abs() < 1e-12);
        assert!(r4.pass);
    }
}
