//! Centralized numerical tolerances.
//!
//! Every identity check and certificate in the crate pins its threshold here
//! so that test code and library code cannot drift apart.

/// Relative Hermiticity defect allowed on assembled operators:
/// `‖M − M†‖_max ≤ HERMITICITY_REL · ‖M‖_max`.
pub const HERMITICITY_REL: f64 = 1e-12;

/// CCR identity on the safe subspace, relative to `‖g‖‖h‖`.
pub const CCR_REL: f64 = 1e-12;

/// Second-quantization functor identities (Γ/dΓ relations, translation
/// conjugation, identification isometry and commutation).
pub const GAMMA_IDENTITY: f64 = 1e-10;

/// Slack on the number-bound singular value: `σ_max(a#(h)(N+1)^{-1/2}) ≤ ‖h‖ + this`.
pub const NUMBER_BOUND_SLACK: f64 = 1e-10;

/// Contraction acceptance for one-boson operators: `σ_max ≤ 1 + this`.
pub const CONTRACTION_SLACK: f64 = 1e-10;

/// Position localizer saturation checks (`j ≈ Id`, `j ≈ 0`).
pub const LOCALIZER_SATURATION: f64 = 1e-8;

/// Product norm of localizers with disjoint supports, on the reference grid.
pub const LOCALIZER_DISJOINT: f64 = 1e-6;

/// Entrywise agreement of a sum of parts with the assembled total.
pub const PART_SUM_ABS: f64 = 1e-12;

/// Default relative residual for iterative eigensolvers.
pub const EIG_TOL: f64 = 1e-10;

/// Projector idempotency / Hermiticity and commutation with H.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// Eigenvalue-tie guard around a projector cut energy.
pub const EIGENVALUE_TIE: f64 = 1e-9;

/// Dense path is used for dimensions up to this; Lanczos above.
pub const DENSE_EIG_MAX_DIM: usize = 4000;

/// Lattice double-commutator identity, entrywise.
pub const LOCALIZATION_IDENTITY: f64 = 1e-10;

/// Allowed negative slack when certifying operator inequalities.
pub const CERTIFICATE_SLACK: f64 = 1e-8;

/// Normalization defect of merged trial states.
pub const TRIAL_NORM_DEFECT: f64 = 1e-6;

/// Conjugation symmetrized-identity defect (Combes-Thomas lattice identity).
pub const CT_IDENTITY: f64 = 1e-10;

/// Monotonicity slack for sigma_R schedules (exact variational fact).
pub const SIGMA_MONOTONE_SLACK: f64 = 1e-10;
