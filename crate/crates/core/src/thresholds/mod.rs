//! Ionization-threshold computations: restricted ground energies Σ_R,
//! their extrapolation Σ, the cluster threshold τ, the equivalence report,
//! and IR-cutoff stability with derived constants.

mod trial;

pub use trial::{trial_state_energy, TrialStateOptions, TrialStateReport, TrialStateRow};

use crate::error::{CoreError, Result};
use crate::fock::PartTag;
use crate::model::{
    assemble_hamiltonian, build_form_factor, dirichlet_restrict, AssembledHamiltonian, ModelSpec,
};
use crate::scalar::{dot, Scalar, C};
use crate::spectral::{eigs_lowest, eigs_lowest_with, EigMethod, EigenResult, SolverOptions};
use serde::Serialize;

/// Lowest pair with the method chosen by size: the dense path below about
/// a thousand dimensions, Lanczos above (both certify residuals).
fn lowest_pair<S: Scalar>(
    op: &crate::fock::FockOperator<S>,
    opts: SolverOptions<S>,
) -> Result<EigenResult<S>> {
    let method = if op.dim() <= 1024 {
        EigMethod::Dense
    } else {
        EigMethod::Iterative
    };
    eigs_lowest_with(op, 1, opts, method)
}

/// Ground energy of a model, with the solver's residual certificate.
pub fn ground_energy<S: Scalar>(
    spec: &ModelSpec<S>,
    opts: SolverOptions<S>,
) -> Result<(S, EigenResult<S>)> {
    let h = assemble_hamiltonian(spec)?;
    let res = lowest_pair(h.total(), opts)?;
    Ok((res.eigenvalues[0], res))
}

/// Σ_R: lowest energy over states vanishing inside `|X| < r`.
pub fn sigma_r<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    r: S,
    opts: SolverOptions<S>,
) -> Result<S> {
    let restricted = dirichlet_restrict(h, r)?;
    let op = restricted.op.assume_hermitian();
    Ok(lowest_pair(&op, opts)?.eigenvalues[0])
}

/// Σ_R together with the restricted ground vector and kept index set.
pub fn sigma_r_state<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    r: S,
    opts: SolverOptions<S>,
) -> Result<(S, Vec<C<S>>, Vec<usize>)> {
    let restricted = dirichlet_restrict(h, r)?;
    let df = restricted.field_dim;
    let mut kept_global = Vec::new();
    for &e in &restricted.kept_electron {
        for fi in 0..df {
            kept_global.push(e * df + fi);
        }
    }
    let op = restricted.op.assume_hermitian();
    let res = lowest_pair(&op, opts)?;
    Ok((
        res.eigenvalues[0],
        res.eigenvectors[0].clone(),
        kept_global,
    ))
}

/// Diagnostics of the exponential extrapolation `Σ_R = Σ − c·e^{−aR}`.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaFit<S: Scalar> {
    pub sigma: S,
    pub amplitude: S,
    pub rate: S,
    pub rms_residual: S,
    /// False when the data is boundary-dominated and the final Σ_R was
    /// returned instead of a fit.
    pub fitted: bool,
}

/// Least-squares fit of `Σ − c·e^{−aR}` on the schedule tail, with a
/// fallback to the final value when the residuals reject the model.
pub fn sigma_extrapolate<S: Scalar>(points: &[(S, S)]) -> Result<SigmaFit<S>> {
    if points.len() < 4 {
        return Err(CoreError::InvalidInput(
            "extrapolation needs at least 4 schedule points".into(),
        ));
    }
    for (i, w) in points.windows(2).enumerate() {
        if w[0].0 >= w[1].0 {
            return Err(CoreError::InvalidInput("R schedule must increase".into()));
        }
        if w[1].1 < w[0].1 - S::of(crate::tol::SIGMA_MONOTONE_SLACK) {
            return Err(CoreError::NonMonotone {
                index: i,
                prev: w[0].1.to_f64_lossy(),
                next: w[1].1.to_f64_lossy(),
            });
        }
    }
    let last = points.last().unwrap().1;
    let first = points.first().unwrap().1;
    let spread = last - first;
    if spread.abs() <= S::of(1e-14) * last.abs().max(S::one()) {
        return Ok(SigmaFit {
            sigma: last,
            amplitude: S::zero(),
            rate: S::zero(),
            rms_residual: S::zero(),
            fitted: true,
        });
    }

    // scan the decay rate, solving the linear subproblem per candidate
    let r_span = points.last().unwrap().0 - points[0].0;
    let a_lo = S::of(1e-3) / r_span;
    let a_hi = S::of(50.0) / r_span;
    let eval = |a: S| -> (S, S, S) {
        // least squares for (sigma, c) in y = sigma - c·e^{-aR}
        let n = S::of(points.len() as f64);
        let mut su = S::zero();
        let mut suu = S::zero();
        let mut sy = S::zero();
        let mut suy = S::zero();
        for &(r, y) in points {
            let u = (-a * r).exp();
            su += u;
            suu += u * u;
            sy += y;
            suy += u * y;
        }
        let det = n * suu - su * su;
        if det.abs() <= S::epsilon() {
            return (S::infinity(), last, S::zero());
        }
        let sigma = (suu * sy - su * suy) / det;
        let minus_c = (n * suy - su * sy) / det;
        let c = -minus_c;
        let mut rss = S::zero();
        for &(r, y) in points {
            let model = sigma - c * (-a * r).exp();
            rss += (model - y) * (model - y);
        }
        ((rss / n).sqrt(), sigma, c)
    };

    let mut best = (S::infinity(), last, S::zero(), a_lo);
    let steps = 160;
    for i in 0..=steps {
        let t = S::of(i as f64) / S::of(steps as f64);
        let a = a_lo * (a_hi / a_lo).powf(t);
        let (rms, sigma, c) = eval(a);
        if rms < best.0 {
            best = (rms, sigma, c, a);
        }
    }
    // golden-section refinement around the best rate (log axis)
    let mut lo = best.3 / S::of(1.6);
    let mut hi = best.3 * S::of(1.6);
    for _ in 0..80 {
        let m1 = lo * (hi / lo).powf(S::of(0.382));
        let m2 = lo * (hi / lo).powf(S::of(0.618));
        if eval(m1).0 <= eval(m2).0 {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let a_star = (lo * hi).sqrt();
    let (rms, sigma, c) = eval(a_star);
    let acceptable = rms <= S::of(0.2) * spread.abs() && c > S::zero() && sigma >= last - rms;
    if !acceptable {
        return Ok(SigmaFit {
            sigma: last,
            amplitude: S::zero(),
            rate: S::zero(),
            rms_residual: rms,
            fitted: false,
        });
    }
    Ok(SigmaFit {
        sigma,
        amplitude: c,
        rate: a_star,
        rms_residual: rms,
        fitted: true,
    })
}

/// One row of the cluster decomposition table.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterEntry<S: Scalar> {
    pub n_prime: usize,
    /// Ground energy of the remaining cluster (external potential kept).
    pub e_cluster: S,
    /// Ground energy of the escaped cluster (external potential dropped).
    pub e0_cluster: S,
    pub total: S,
}

#[derive(Debug, Clone, Serialize)]
pub struct TauReport<S: Scalar> {
    pub entries: Vec<ClusterEntry<S>>,
    pub tau: S,
}

/// Cluster threshold `τ = min over N' ≥ 1 of (E_{N−N'} + E⁰_{N'})`, with
/// `E_0 = 0` realized by the empty cluster carrying only the field.
pub fn tau<S: Scalar>(spec: &ModelSpec<S>, opts: SolverOptions<S>) -> Result<TauReport<S>> {
    if spec.n_electrons == 0 {
        return Err(CoreError::InvalidInput(
            "cluster threshold needs at least one electron".into(),
        ));
    }
    let mut entries = Vec::new();
    for n_prime in 1..=spec.n_electrons {
        let remain = spec.with_electron_count(spec.n_electrons - n_prime)?;
        let escaped = spec.with_electron_count(n_prime)?.without_external_potential();
        let (e_cluster, _) = ground_energy(&remain, opts)?;
        let (e0_cluster, _) = ground_energy(&escaped, opts)?;
        entries.push(ClusterEntry {
            n_prime,
            e_cluster,
            e0_cluster,
            total: e_cluster + e0_cluster,
        });
    }
    let tau = entries
        .iter()
        .map(|e| e.total)
        .fold(S::infinity(), |a, b| a.min(b));
    Ok(TauReport { entries, tau })
}

/// Complete threshold-equivalence diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport<S: Scalar> {
    pub r_schedule: Vec<S>,
    pub sigma_r: Vec<S>,
    pub sigma: S,
    pub fit: SigmaFit<S>,
    pub cluster_table: Vec<ClusterEntry<S>>,
    pub tau: S,
    pub ground_energy: S,
    /// `Σ − τ`.
    pub discrepancy: S,
    pub model_tolerance: S,
    pub solver_tol: S,
    pub discretization_proxy: Option<S>,
    /// Lattice confinement allowance of the restricted geometry at the
    /// largest R (exactly computable finite-box bias).
    pub confinement_allowance: S,
    pub pass: bool,
}

/// Ground of the free lattice Dirichlet problem on `m` points.
fn dirichlet_ground<S: Scalar>(m: usize, h: S) -> S {
    if m == 0 {
        return S::infinity();
    }
    let arg = S::PI() / (S::of(2.0) * S::of((m + 1) as f64));
    S::of(4.0) / (h * h) * arg.sin().powi(2)
}

/// Kinetic confinement bias of the annulus geometry at radius `r`:
/// free ground on the one-sided interval `[r, L)` minus the full-box
/// ground, per escaping electron.
fn confinement_allowance<S: Scalar>(spec: &ModelSpec<S>, r_max: S) -> S {
    let h = spec.grid.spacing();
    let outside = (0..spec.grid.points())
        .filter(|&i| spec.grid.coordinate(i) >= r_max)
        .count();
    let interval = dirichlet_ground(outside, h);
    let full = dirichlet_ground(spec.grid.points(), h);
    (interval - full).max(S::zero())
}

/// Compute Σ over the schedule, extrapolate, compare with τ, and declare
/// the per-instance tolerance. A coarse-grid variant of the spec, when
/// given, contributes the discretization proxy `|Σ(n) − Σ(n/2)|`.
pub fn equivalence_report<S: Scalar>(
    spec: &ModelSpec<S>,
    r_schedule: &[S],
    coarse: Option<&ModelSpec<S>>,
    opts: SolverOptions<S>,
) -> Result<ThresholdReport<S>> {
    let h = assemble_hamiltonian(spec)?;
    let e0 = lowest_pair(h.total(), opts)?.eigenvalues[0];
    let mut sigma_points = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        sigma_points.push((r, sigma_r(&h, r, opts)?));
    }
    // exact variational fact: Σ_R is nondecreasing
    for (i, w) in sigma_points.windows(2).enumerate() {
        if w[1].1 < w[0].1 - S::of(crate::tol::SIGMA_MONOTONE_SLACK) {
            return Err(CoreError::NonMonotone {
                index: i,
                prev: w[0].1.to_f64_lossy(),
                next: w[1].1.to_f64_lossy(),
            });
        }
    }
    let fit = sigma_extrapolate(&sigma_points)?;
    let tau_report = tau(spec, opts)?;

    let proxy = match coarse {
        Some(cs) => {
            let hc = assemble_hamiltonian(cs)?;
            let mut pts = Vec::new();
            for &r in r_schedule {
                pts.push((r, sigma_r(&hc, r, opts)?));
            }
            let fc = sigma_extrapolate(&pts)?;
            Some((fc.sigma - fit.sigma).abs())
        }
        None => None,
    };
    let allowance = confinement_allowance(spec, *r_schedule.last().unwrap());
    let mut tolerance = (S::of(2.0) * opts.tol).max(allowance);
    if let Some(p) = proxy {
        tolerance = tolerance.max(p);
    }
    let discrepancy = fit.sigma - tau_report.tau;
    let pass = discrepancy.abs() <= tolerance;
    Ok(ThresholdReport {
        r_schedule: r_schedule.to_vec(),
        sigma_r: sigma_points.iter().map(|p| p.1).collect(),
        sigma: fit.sigma,
        fit,
        cluster_table: tau_report.entries,
        tau: tau_report.tau,
        ground_energy: e0,
        discrepancy,
        model_tolerance: tolerance,
        solver_tol: opts.tol,
        discretization_proxy: proxy,
        confinement_allowance: allowance,
        pass,
    })
}

/// One IR-schedule point with its derived bound.
#[derive(Debug, Clone, Serialize)]
pub struct IrShiftEntry<S: Scalar> {
    pub mu: S,
    pub e: S,
    pub sigma: S,
    pub e_shift: S,
    pub sigma_shift: S,
    /// Constant derived from the dropped-coupling norms.
    pub c_derived: S,
    /// Sobolev-type state factor `max ⟨Σp² + H_f + 1⟩` entering the bound.
    pub state_factor: S,
    pub bound: S,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrShiftReport<S: Scalar> {
    pub mu_min: S,
    pub e_min: S,
    pub sigma_min: S,
    pub entries: Vec<IrShiftEntry<S>>,
    pub shifts_monotone: bool,
    pub pass: bool,
}

/// Norm pair over a frequency band `[lo, hi)` of the coupling:
/// `(Σ w/ω, Σ w/ω²)` = `(‖G_band‖², ‖ω^{-1/2}G_band‖²)`.
fn band_norms<S: Scalar>(spec: &ModelSpec<S>, lo: S, hi: S) -> (S, S) {
    let mut n2 = S::zero();
    let mut n2w = S::zero();
    for m in spec.mode_basis.modes() {
        if m.frequency >= lo
            && m.frequency < hi
            && m.frequency <= spec.coupling.uv_cutoff
            && m.frequency > S::zero()
        {
            n2 += m.weight / m.frequency;
            n2w += m.weight / (m.frequency * m.frequency);
        }
    }
    (n2, n2w)
}

/// `⟨ψ, (Σp² + H_f + 1)ψ⟩` on a (possibly restricted) state.
fn state_factor<S: Scalar>(
    h: &AssembledHamiltonian<S>,
    psi: &[C<S>],
    kept: Option<&[usize]>,
) -> S {
    let kin = h.electron_kinetic_op();
    let field = h.part(PartTag::Field);
    let (kin, field) = match kept {
        Some(k) => (kin.restrict(k), field.restrict(k)),
        None => (kin, field.clone()),
    };
    let kv = dot(psi, &kin.apply_vec(psi)).re;
    let fv = dot(psi, &field.apply_vec(psi)).re;
    kv + fv + S::one()
}

/// IR stability: `|E(μ) − E(μ_min)|` and `|Σ(μ) − Σ(μ_min)|` against
/// `μ^{1/2}·C·K`, with `C` derived from the dropped-coupling norms and
/// `K` the measured state factor.
pub fn ir_threshold_shift<S: Scalar>(
    spec: &ModelSpec<S>,
    mu_schedule: &[S],
    r_schedule: &[S],
    opts: SolverOptions<S>,
) -> Result<IrShiftReport<S>> {
    if mu_schedule.len() < 2 {
        return Err(CoreError::InvalidInput("IR schedule needs at least 2 points".into()));
    }
    for w in mu_schedule.windows(2) {
        if w[1] >= w[0] {
            return Err(CoreError::InvalidInput("IR schedule must decrease".into()));
        }
    }
    let mu_min = *mu_schedule.last().unwrap();
    let spec_min = spec.with_ir_cutoff(mu_min)?;
    let h_min = assemble_hamiltonian(&spec_min)?;
    let gs_min = lowest_pair(h_min.total(), opts)?;
    let e_min = gs_min.eigenvalues[0];
    let k_min_e = state_factor(&h_min, &gs_min.eigenvectors[0], None);

    let r_last = *r_schedule.last().ok_or_else(|| {
        CoreError::InvalidInput("IR study needs a nonempty R schedule".into())
    })?;
    let mut pts = Vec::new();
    for &r in r_schedule {
        pts.push((r, sigma_r(&h_min, r, opts)?));
    }
    let sigma_min = sigma_extrapolate(&pts)?.sigma;
    let (_, psi_min_r, kept_min) = sigma_r_state(&h_min, r_last, opts)?;
    let k_min_s = state_factor(&h_min, &psi_min_r, Some(&kept_min));

    let alpha = spec.coupling.alpha;
    let n_el = S::of(spec.n_electrons as f64);
    let mut entries: Vec<IrShiftEntry<S>> = Vec::new();
    for &mu in &mu_schedule[..mu_schedule.len() - 1] {
        let spec_mu = spec.with_ir_cutoff(mu)?;
        let h_mu = assemble_hamiltonian(&spec_mu)?;
        let gs_mu = lowest_pair(h_mu.total(), opts)?;
        let e_mu = gs_mu.eigenvalues[0];
        let mut pts = Vec::new();
        for &r in r_schedule {
            pts.push((r, sigma_r(&h_mu, r, opts)?));
        }
        let sigma_mu = sigma_extrapolate(&pts)?.sigma;

        // dropped band [mu_min, mu) and kept band [mu, uv]
        let (d2, d2w) = band_norms(spec, mu_min, mu);
        let (k2, k2w) = band_norms(spec, mu, spec.coupling.uv_cutoff + S::one());
        let c1d = S::of(4.0) * d2w;
        let c2d = S::of(2.0) * d2 + c1d;
        let c1k = S::of(4.0) * k2w;
        let c2k = S::of(2.0) * k2 + c1k;
        let sqrt_mu = mu.sqrt();
        let sqrt_alpha = alpha.sqrt();
        // ±Δ ⪯ √α·√μ·Σp² + (√α/√μ + 2α)·N(c1d·H_f + c2d) + αN(c1k·H_f + c2k)
        let drop_coef = sqrt_alpha / sqrt_mu + S::of(2.0) * alpha;
        let c_derived = sqrt_alpha
            .max((drop_coef * n_el * c1d + alpha * n_el * c1k) / sqrt_mu)
            .max((drop_coef * n_el * c2d + alpha * n_el * c2k) / sqrt_mu);

        let k_mu_e = state_factor(&h_mu, &gs_mu.eigenvectors[0], None);
        let (_, psi_mu_r, kept_mu) = sigma_r_state(&h_mu, r_last, opts)?;
        let k_mu_s = state_factor(&h_mu, &psi_mu_r, Some(&kept_mu));
        let kf = k_min_e.max(k_mu_e).max(k_min_s).max(k_mu_s);

        let bound = sqrt_mu * c_derived * kf;
        let e_shift = (e_mu - e_min).abs();
        let sigma_shift = (sigma_mu - sigma_min).abs();
        let pass = e_shift <= bound && sigma_shift <= bound;
        entries.push(IrShiftEntry {
            mu,
            e: e_mu,
            sigma: sigma_mu,
            e_shift,
            sigma_shift,
            c_derived,
            state_factor: kf,
            bound,
            pass,
        });
    }
    let shifts_monotone = entries
        .windows(2)
        .all(|w| w[1].e_shift <= w[0].e_shift + S::of(1e-12));
    let pass = entries.iter().all(|e| e.pass);
    Ok(IrShiftReport {
        mu_min,
        e_min,
        sigma_min,
        entries,
        shifts_monotone,
        pass,
    })
}

/// Derived norms are also exposed for the per-instance form-bound
/// certificate used in tests.
pub fn dropped_band_norms<S: Scalar>(spec: &ModelSpec<S>, lo: S, hi: S) -> (S, S) {
    band_norms(spec, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeBasis;
    use crate::model::{CouplingSpec, ElectronGrid, PotentialSpec, Statistics};

    fn well_spec(alpha: f64, n: usize, l: f64, m: usize, n_max: u32, mu: f64) -> ModelSpec<f64> {
        let grid = ElectronGrid::new(l, n).unwrap();
        let modes = ModeBasis::uniform_symmetric(m, 1.0, mu).unwrap();
        ModelSpec::new(
            1,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::from_fns(
                &grid,
                |x: f64| -6.0 * (-x * x / (2.0 * 0.64)).exp(),
                |_| 0.0,
                3.0,
            ),
            CouplingSpec::new(alpha, 1.0, mu).unwrap(),
            modes,
            n_max,
        )
        .unwrap()
    }

    #[test]
    fn ground_energy_free_lattice_closed_form() {
        let grid = ElectronGrid::new(6.0, 24).unwrap();
        let modes = ModeBasis::uniform_symmetric(2, 1.0, 0.0).unwrap();
        let spec = ModelSpec::new(
            1,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::zero(&grid),
            CouplingSpec::new(0.0, 1.0, 0.0).unwrap(),
            modes,
            1,
        )
        .unwrap();
        let (e, res) = ground_energy(&spec, SolverOptions::default()).unwrap();
        let h = grid.spacing();
        let exact = dirichlet_ground(24, h);
        assert!((e - exact).abs() < 1e-10);
        assert!(res.residuals[0] < 1e-8);
    }

    #[test]
    fn sigma_r_zero_is_ground() {
        let spec = well_spec(0.1, 16, 6.0, 2, 1, 0.0);
        let h = assemble_hamiltonian(&spec).unwrap();
        let (e, _) = ground_energy(&spec, SolverOptions::default()).unwrap();
        let s0 = sigma_r(&h, 0.0, SolverOptions::default()).unwrap();
        assert!((e - s0).abs() < 1e-10);
    }

    #[test]
    fn sigma_r_monotone_in_r() {
        let spec = well_spec(0.1, 20, 6.0, 2, 1, 0.0);
        let h = assemble_hamiltonian(&spec).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for r in [0.5, 1.5, 2.5, 3.5] {
            let s = sigma_r(&h, r, SolverOptions::default()).unwrap();
            assert!(s >= prev - 1e-10);
            prev = s;
        }
    }

    #[test]
    fn extrapolation_recovers_synthetic_exponential() {
        let pts: Vec<(f64, f64)> = (0..6)
            .map(|i| {
                let r = 1.0 + 0.5 * i as f64;
                (r, 3.0 - 0.7 * (-1.3 * r).exp())
            })
            .collect();
        let fit = sigma_extrapolate(&pts).unwrap();
        assert!(fit.fitted);
        assert!((fit.sigma - 3.0).abs() < 1e-8, "sigma {}", fit.sigma);
        assert!((fit.rate - 1.3).abs() < 1e-4);
    }

    #[test]
    fn extrapolation_constant_input() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 2.5)).collect();
        let fit = sigma_extrapolate(&pts).unwrap();
        assert_eq!(fit.sigma, 2.5);
        assert_eq!(fit.amplitude, 0.0);
    }

    #[test]
    fn extrapolation_boundary_dominated_falls_back() {
        // convex growth (confinement-dominated): increments increase
        let pts: Vec<(f64, f64)> = (0..5)
            .map(|i| {
                let r = 1.0 + i as f64;
                (r, 1.0 + 0.1 * (10.0 - r).powi(-2))
            })
            .collect();
        let fit = sigma_extrapolate(&pts).unwrap();
        assert!(!fit.fitted, "boundary-dominated data should not fit");
        assert_eq!(fit.sigma, pts.last().unwrap().1);
    }

    #[test]
    fn extrapolation_rejects_nonmonotone() {
        let pts = vec![(1.0, 0.5), (2.0, 0.4), (3.0, 0.6), (4.0, 0.7)];
        match sigma_extrapolate(&pts) {
            Err(CoreError::NonMonotone { .. }) => {}
            other => panic!("expected NonMonotone, got {other:?}"),
        }
    }

    #[test]
    fn tau_single_electron_is_free_cluster_ground() {
        let spec = well_spec(0.1, 16, 6.0, 2, 1, 0.0);
        let report = tau(&spec, SolverOptions::default()).unwrap();
        assert_eq!(report.entries.len(), 1);
        let free = spec.without_external_potential();
        let (e0, _) = ground_energy(&free, SolverOptions::default()).unwrap();
        assert!((report.tau - e0).abs() < 1e-10);
        // the empty cluster contributes exactly zero
        assert!(report.entries[0].e_cluster.abs() < 1e-10);
    }

    #[test]
    fn tau_deep_well_binding_matches_oracle() {
        let spec = well_spec(0.0, 32, 8.0, 2, 0, 0.0);
        let report = tau(&spec, SolverOptions::default()).unwrap();
        let (e, _) = ground_energy(&spec, SolverOptions::default()).unwrap();
        // binding energy of the lattice problem from the electron block
        let n = 32;
        let h = spec.grid.spacing();
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, C::new(2.0 / (h * h) + spec.potentials.v[i], 0.0)));
            if i + 1 < n {
                t.push((i, i + 1, C::new(-1.0 / (h * h), 0.0)));
                t.push((i + 1, i, C::new(-1.0 / (h * h), 0.0)));
            }
        }
        let block = crate::fock::FockOperator::from_triplets(n, t).assume_hermitian();
        let e_block = eigs_lowest(&block, 1, SolverOptions::default())
            .unwrap()
            .eigenvalues[0];
        let free = dirichlet_ground(n, h);
        assert!((e - e_block).abs() < 1e-10);
        assert!(((report.tau - e) - (free - e_block)).abs() < 1e-9);
    }

    #[test]
    fn tau_two_electrons_no_pair_potential() {
        let grid = ElectronGrid::new(4.0, 10).unwrap();
        let modes = ModeBasis::uniform_symmetric(2, 1.0, 0.0).unwrap();
        let spec = ModelSpec::new(
            2,
            Statistics::Distinguishable,
            grid,
            PotentialSpec::from_fns(&grid, |x: f64| -2.0 * (-x * x).exp(), |_| 0.0, 2.0),
            CouplingSpec::new(0.0, 1.0, 0.0).unwrap(),
            modes,
            1,
        )
        .unwrap();
        let report = tau(&spec, SolverOptions::default()).unwrap();
        assert_eq!(report.entries.len(), 2);
        // distinguishable, w = 0: E⁰₂ = 2·E⁰₁
        let e01 = report.entries[0].e0_cluster;
        let e02 = report.entries[1].e0_cluster;
        assert!((e02 - 2.0 * e01).abs() < 1e-9, "{e02} vs {}", 2.0 * e01);
        assert!((report.tau - report.entries.iter().map(|e| e.total).fold(f64::INFINITY, f64::min)).abs() < 1e-12);
    }

    #[test]
    fn equivalence_alpha_zero_schroedinger_reduction() {
        let spec = well_spec(0.0, 40, 10.0, 2, 1, 0.0);
        let coarse = {
            let mut c = spec.clone();
            c.grid = ElectronGrid::new(10.0, 20).unwrap();
            c.potentials = PotentialSpec::from_fns(
                &c.grid,
                |x: f64| -6.0 * (-x * x / (2.0 * 0.64)).exp(),
                |_| 0.0,
                3.0,
            );
            c
        };
        let report = equivalence_report(
            &spec,
            &[2.0, 2.5, 3.0, 3.5, 4.0],
            Some(&coarse),
            SolverOptions::default(),
        )
        .unwrap();
        assert!(report.pass, "discrepancy {} vs tol {}", report.discrepancy, report.model_tolerance);
        assert!(report.sigma >= report.tau - 1e-9);
        // Σ_R nondecreasing was asserted internally; re-check the output
        for w in report.sigma_r.windows(2) {
            assert!(w[1] >= w[0] - 1e-10);
        }
    }

    #[test]
    fn ir_shift_bounded_by_derived_constant() {
        let spec = well_spec(0.1, 24, 6.0, 8, 1, 0.0);
        let report = ir_threshold_shift(
            &spec,
            &[0.8, 0.6, 0.4, 0.2],
            &[1.5, 2.0, 2.5, 3.0],
            SolverOptions::default(),
        )
        .unwrap();
        assert!(report.pass, "entries: {:?}", report.entries.iter().map(|e| (e.e_shift, e.bound)).collect::<Vec<_>>());
        assert_eq!(report.entries.len(), 3);
    }

    #[test]
    fn ir_shift_equal_schedule_is_zero() {
        let spec = well_spec(0.1, 16, 6.0, 4, 1, 0.0);
        let report =
            ir_threshold_shift(&spec, &[0.3, 0.3 - 1e-9], &[1.5, 2.0, 2.5, 3.0], SolverOptions::default())
                .unwrap();
        // both cutoffs select the same modes, so the shift vanishes
        assert!(report.entries[0].e_shift < 1e-10);
        assert!(report.entries[0].sigma_shift < 1e-10);
    }
}
