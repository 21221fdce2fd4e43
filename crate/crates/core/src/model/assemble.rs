//! Hamiltonian assembly on the product of the electron configuration space
//! and the truncated Fock space, with part-wise bookkeeping.
//!
//! Parts: `kinetic` holds `Σ p_j²` and the symmetrized cross term
//! `√α (p·A + A·p)` (everything containing `p`); `interaction` holds
//! `α Σ A(x_j)²` and the optional two-level surrogate; `potential` and
//! `field` are diagonal in the electron configuration and occupation basis
//! respectively.

use crate::error::Result;
use crate::fock::{
    annihilation_op, build_fock_basis, creation_op, dgamma, FockBasis, FockOperator, ModeBasis,
    OneBosonVector, PartTag,
};
use crate::model::space::{ElectronSpace, ReductionMap};
use crate::model::spec::{CouplingSpec, ModelSpec, Statistics};
use crate::scalar::{Scalar, C};
use std::collections::BTreeMap;

/// Coupling form factor at electron position `x`:
/// `G_x(k) = ω^{-1/2} · 1{μ ≤ ω ≤ Λ} · e^{i(φ − kx)} · √w`,
/// with the quadrature weight folded into the amplitude. Soft-mode
/// amplitudes are exactly zero; `‖G_x‖` is independent of `x`.
pub fn build_form_factor<S: Scalar>(
    coupling: &CouplingSpec<S>,
    x: S,
    modes: &ModeBasis<S>,
) -> OneBosonVector<S> {
    let amps = modes
        .modes()
        .iter()
        .map(|m| {
            let in_band = m.frequency >= coupling.ir_cutoff
                && m.frequency <= coupling.uv_cutoff
                && m.frequency > S::zero();
            if !in_band {
                return C::new(S::zero(), S::zero());
            }
            let mag = m.weight.sqrt() / m.frequency.sqrt();
            let phase = C::new(S::zero(), coupling.form_phase - m.momentum * x).exp();
            phase.scale(mag)
        })
        .collect();
    OneBosonVector::new(amps)
}

/// Assembled operator with its tagged parts and basis handles.
#[derive(Debug, Clone)]
pub struct AssembledHamiltonian<S: Scalar> {
    total: FockOperator<S>,
    parts: BTreeMap<PartTag, FockOperator<S>>,
    spec: ModelSpec<S>,
    fock_basis: FockBasis<S>,
    electron: ElectronSpace<S>,
}

impl<S: Scalar> AssembledHamiltonian<S> {
    pub fn total(&self) -> &FockOperator<S> {
        &self.total
    }

    pub fn part(&self, tag: PartTag) -> &FockOperator<S> {
        &self.parts[&tag]
    }

    pub fn parts(&self) -> &BTreeMap<PartTag, FockOperator<S>> {
        &self.parts
    }

    pub fn spec(&self) -> &ModelSpec<S> {
        &self.spec
    }

    pub fn fock_basis(&self) -> &FockBasis<S> {
        &self.fock_basis
    }

    pub fn electron(&self) -> &ElectronSpace<S> {
        &self.electron
    }

    pub fn field_dim(&self) -> usize {
        self.fock_basis.dim()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    /// Diagonal operator `f(|X|) ⊗ Id_field` on the full space.
    pub fn diag_in_x(&self, f: impl Fn(S) -> S) -> FockOperator<S> {
        let df = self.field_dim();
        let mut diag = vec![S::zero(); self.dim()];
        for e in 0..self.electron.dim() {
            let val = f(self.electron.abs_x(e));
            for fi in 0..df {
                diag[e * df + fi] = val;
            }
        }
        FockOperator::from_real_diag(&diag)
    }

    /// `Σ_j p_j² ⊗ Id_field` (pure electron kinetic energy, no coupling).
    pub fn electron_kinetic_op(&self) -> FockOperator<S> {
        let full = full_product_space(&self.spec);
        let t = electron_kinetic(&self.spec, &full);
        let op = t.kron(&FockOperator::identity(self.field_dim()));
        self.reduce(op)
    }

    /// `α Σ_j A(x_j)² ` block-diagonal over configurations (no surrogate).
    pub fn coupling_square_op(&self) -> FockOperator<S> {
        let full = full_product_space(&self.spec);
        let caches = FieldCaches::build(&self.spec, &self.fock_basis);
        let df = self.field_dim();
        let mut triplets = Vec::new();
        if let Some(a2) = &caches.a_squared {
            let alpha = self.spec.coupling.alpha;
            for e in 0..full.dim() {
                let cfg = full.config(full.config_of_index(e));
                for &gi in cfg {
                    for (r, c, v) in a2[gi].entries() {
                        triplets.push((e * df + r, e * df + c, v.scale(alpha)));
                    }
                }
            }
        }
        let op = FockOperator::from_triplets(full.dim() * df, triplets);
        self.reduce(op)
    }

    fn reduce(&self, op: FockOperator<S>) -> FockOperator<S> {
        if self.spec.n_electrons == 2
            && self.spec.statistics == Statistics::SpatiallyAntisymmetric
        {
            let b = ReductionMap::antisymmetric_pairs(self.spec.grid.points());
            b.sandwich(&op, self.field_dim())
        } else {
            op
        }
    }

    /// Electron marginal density `ρ(e) = Σ_f |ψ(e,f)|²`.
    pub fn electron_marginal(&self, psi: &[C<S>]) -> Vec<S> {
        let df = self.field_dim();
        (0..self.electron.dim())
            .map(|e| {
                (0..df).fold(S::zero(), |acc, fi| acc + psi[e * df + fi].norm_sqr())
            })
            .collect()
    }
}

/// The full (distinguishable) product space used internally by assembly.
fn full_product_space<S: Scalar>(spec: &ModelSpec<S>) -> ElectronSpace<S> {
    let mut full_spec = spec.clone();
    full_spec.statistics = Statistics::Distinguishable;
    ElectronSpace::from_spec(&full_spec)
}

/// Per-grid-point field operators reused across configurations.
struct FieldCaches<S: Scalar> {
    /// `A(x_i) = a(G_{x_i}) + a*(G_{x_i})` per grid point.
    a_ops: Option<Vec<FockOperator<S>>>,
    a_squared: Option<Vec<FockOperator<S>>>,
    /// Surrogate field operator `Φ(iωG_{x_i})` per grid point.
    surrogate: Option<Vec<FockOperator<S>>>,
    hf: FockOperator<S>,
}

impl<S: Scalar> FieldCaches<S> {
    fn build(spec: &ModelSpec<S>, basis: &FockBasis<S>) -> Self {
        let modes = &spec.mode_basis;
        let hf = dgamma(&modes.frequencies(), basis);
        let coupled = spec.coupling.alpha > S::zero() && spec.n_electrons > 0;
        let (a_ops, a_squared) = if coupled {
            // A(x)² enters as the compression P A² P of the full-space
            // square (virtual one-photon excursions above the cap are
            // kept), so that the assembled operator is the compression of
            // the untruncated form and ground energies are monotone in
            // N_max. The square is built on a basis extended by one boson
            // and cut back to the truncated block, which is a prefix in
            // the graded enumeration.
            let extended = build_fock_basis(&spec.mode_basis, spec.n_max + 1)
                .expect("extended basis within cap");
            let prefix: Vec<usize> = (0..basis.dim()).collect();
            let mut aops = Vec::with_capacity(spec.grid.points());
            let mut asq = Vec::with_capacity(spec.grid.points());
            for i in 0..spec.grid.points() {
                let g = build_form_factor(&spec.coupling, spec.grid.coordinate(i), modes);
                let a = creation_op(&g, basis)
                    .expect("form factor matches basis")
                    .add(&annihilation_op(&g, basis).expect("form factor matches basis"));
                let a_ext = creation_op(&g, &extended)
                    .expect("form factor matches basis")
                    .add(&annihilation_op(&g, &extended).expect("form factor matches basis"));
                asq.push(a_ext.matmul(&a_ext).restrict(&prefix));
                aops.push(a);
            }
            (Some(aops), Some(asq))
        } else {
            (None, None)
        };
        let surrogate = if spec.coupling.spin_surrogate_g != S::zero()
            && spec.coupling.alpha > S::zero()
        {
            let mut ops = Vec::with_capacity(spec.grid.points());
            for i in 0..spec.grid.points() {
                let g = build_form_factor(&spec.coupling, spec.grid.coordinate(i), modes);
                let amps: Vec<C<S>> = g
                    .amplitudes()
                    .iter()
                    .zip(modes.modes())
                    .map(|(a, m)| C::new(S::zero(), m.frequency) * *a)
                    .collect();
                let hs = OneBosonVector::new(amps);
                ops.push(
                    creation_op(&hs, basis)
                        .expect("surrogate factor matches basis")
                        .add(&annihilation_op(&hs, basis).expect("surrogate factor matches basis")),
                );
            }
            Some(ops)
        } else {
            None
        };
        Self {
            a_ops,
            a_squared,
            surrogate,
            hf,
        }
    }
}

/// `Σ_j p_j²` on the electron space (3-point Dirichlet Laplacian per
/// electron), spin-diagonal.
fn electron_kinetic<S: Scalar>(spec: &ModelSpec<S>, space: &ElectronSpace<S>) -> FockOperator<S> {
    let n = spec.grid.points();
    let h = spec.grid.spacing();
    let inv_h2 = S::one() / (h * h);
    let spin = space.spin_levels();
    let mut triplets = Vec::new();
    for c in 0..space.n_configs() {
        let cfg = space.config(c).to_vec();
        for s in 0..spin {
            let e = space.index_of(c, s);
            triplets.push((
                e,
                e,
                C::new(S::of(2.0) * inv_h2 * S::of(cfg.len() as f64), S::zero()),
            ));
        }
        for (j, &ij) in cfg.iter().enumerate() {
            for delta in [-1isize, 1] {
                let ni = ij as isize + delta;
                if ni < 0 || ni >= n as isize {
                    continue;
                }
                let mut ncfg = cfg.clone();
                ncfg[j] = ni as usize;
                if let Some(nc) = lookup_config(space, &ncfg) {
                    for s in 0..spin {
                        triplets.push((
                            space.index_of(c, s),
                            space.index_of(nc, s),
                            C::new(-inv_h2, S::zero()),
                        ));
                    }
                }
            }
        }
    }
    FockOperator::from_triplets(space.dim(), triplets)
}

/// Central-difference momentum operator of electron `j`, spin-diagonal:
/// `(p ψ)_i = −i (ψ_{i+1} − ψ_{i−1}) / (2h)`.
fn electron_momentum<S: Scalar>(
    spec: &ModelSpec<S>,
    space: &ElectronSpace<S>,
    j: usize,
) -> FockOperator<S> {
    let n = spec.grid.points();
    let h = spec.grid.spacing();
    let half_inv = S::one() / (S::of(2.0) * h);
    let spin = space.spin_levels();
    let mut triplets = Vec::new();
    for c in 0..space.n_configs() {
        let cfg = space.config(c).to_vec();
        let ij = cfg[j];
        for (delta, sign) in [(1isize, -S::one()), (-1isize, S::one())] {
            let ni = ij as isize + delta;
            if ni < 0 || ni >= n as isize {
                continue;
            }
            let mut ncfg = cfg.clone();
            ncfg[j] = ni as usize;
            if let Some(nc) = lookup_config(space, &ncfg) {
                for s in 0..spin {
                    triplets.push((
                        space.index_of(c, s),
                        space.index_of(nc, s),
                        C::new(S::zero(), sign * half_inv),
                    ));
                }
            }
        }
    }
    FockOperator::from_triplets(space.dim(), triplets)
}

fn lookup_config<S: Scalar>(space: &ElectronSpace<S>, cfg: &[usize]) -> Option<usize> {
    // full product space: index arithmetic
    let n = space.grid().points();
    match cfg.len() {
        0 => Some(0),
        1 => Some(cfg[0]),
        2 => Some(cfg[0] * n + cfg[1]),
        _ => None,
    }
}

/// Diagonal of the potential part on the electron space.
fn potential_diag<S: Scalar>(spec: &ModelSpec<S>, space: &ElectronSpace<S>) -> Vec<S> {
    let spin = space.spin_levels();
    let mut diag = vec![S::zero(); space.dim()];
    for c in 0..space.n_configs() {
        let cfg = space.config(c);
        let mut val = S::zero();
        for &i in cfg {
            val += spec.potentials.v[i];
        }
        if cfg.len() == 2 {
            let sep = cfg[0].abs_diff(cfg[1]);
            val += spec.potentials.w[sep];
        }
        for s in 0..spin {
            diag[space.index_of(c, s)] = val;
        }
    }
    diag
}

/// Assemble the Hamiltonian of `spec` with tagged parts; Hermitian by
/// construction and verified against the centralized tolerance.
pub fn assemble_hamiltonian<S: Scalar>(spec: &ModelSpec<S>) -> Result<AssembledHamiltonian<S>> {
    spec.validate()?;
    let fock_basis = build_fock_basis(&spec.mode_basis, spec.n_max)?;
    let df = fock_basis.dim();
    let full = full_product_space(spec);
    let caches = FieldCaches::build(spec, &fock_basis);
    let id_field = FockOperator::identity(df);
    let sqrt_alpha = spec.coupling.alpha.sqrt();

    // kinetic: Σ p² ⊗ Id + √α Σ_j (p_j·A + A·p_j)
    let mut kinetic = electron_kinetic(spec, &full).kron(&id_field);
    if let Some(a_ops) = &caches.a_ops {
        let mut cross = Vec::new();
        for j in 0..spec.n_electrons {
            let pj = electron_momentum(spec, &full, j);
            for (e, ep, pval) in pj.entries() {
                let ci = full.config(full.config_of_index(e))[j];
                let cip = full.config(full.config_of_index(ep))[j];
                let scale = pval.scale(sqrt_alpha);
                for (r, c, aval) in a_ops[ci].entries() {
                    cross.push((e * df + r, ep * df + c, scale * aval));
                }
                for (r, c, aval) in a_ops[cip].entries() {
                    cross.push((e * df + r, ep * df + c, scale * aval));
                }
            }
        }
        kinetic = kinetic.add(&FockOperator::from_triplets(full.dim() * df, cross));
    }

    // interaction: α Σ_j A(x_j)² block-diagonal (+ two-level surrogate)
    let mut interaction_triplets = Vec::new();
    if let Some(a2) = &caches.a_squared {
        let alpha = spec.coupling.alpha;
        for e in 0..full.dim() {
            let cfg = full.config(full.config_of_index(e));
            for &gi in cfg {
                for (r, c, v) in a2[gi].entries() {
                    interaction_triplets.push((e * df + r, e * df + c, v.scale(alpha)));
                }
            }
        }
    }
    if let Some(surr) = &caches.surrogate {
        let g_half = spec.coupling.spin_surrogate_g * sqrt_alpha / S::of(2.0);
        for e in 0..full.dim() {
            let cfg = full.config(full.config_of_index(e));
            let sign = full.spin_sign(e);
            for &gi in cfg {
                for (r, c, v) in surr[gi].entries() {
                    interaction_triplets.push((e * df + r, e * df + c, v.scale(g_half * sign)));
                }
            }
        }
    }
    let interaction = FockOperator::from_triplets(full.dim() * df, interaction_triplets);

    // potential and field
    let potential =
        FockOperator::from_real_diag(&potential_diag(spec, &full)).kron(&id_field);
    let field = FockOperator::identity(full.dim()).kron(&caches.hf);

    // antisymmetric reduction, if requested
    let reduce = |op: FockOperator<S>| -> FockOperator<S> {
        if spec.n_electrons == 2 && spec.statistics == Statistics::SpatiallyAntisymmetric {
            let b = ReductionMap::antisymmetric_pairs(spec.grid.points());
            b.sandwich(&op, df)
        } else {
            op
        }
    };
    let kinetic = reduce(kinetic).with_part(PartTag::Kinetic);
    let interaction = reduce(interaction).with_part(PartTag::Interaction);
    let potential = reduce(potential).with_part(PartTag::Potential);
    let field = reduce(field).with_part(PartTag::Field);

    let total = kinetic
        .add(&interaction)
        .add(&potential)
        .add(&field)
        .into_hermitian_checked()?;

    let mut parts = BTreeMap::new();
    parts.insert(PartTag::Kinetic, kinetic);
    parts.insert(PartTag::Interaction, interaction);
    parts.insert(PartTag::Potential, potential);
    parts.insert(PartTag::Field, field);

    let electron = ElectronSpace::from_spec(spec);
    Ok(AssembledHamiltonian {
        total,
        parts,
        spec: spec.clone(),
        fock_basis,
        electron,
    })
}
