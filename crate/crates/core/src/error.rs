//! Error types shared across the core modules.

use thiserror::Error;

/// Errors produced by basis construction, assembly, solvers and certificates.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension {dim} exceeds the configured cap {cap} (infeasible truncation)")]
    DimensionOverflow { dim: u128, cap: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("one-boson operator is not a contraction: largest singular value {sigma} > 1 + tol")]
    NotContraction { sigma: f64 },

    #[error("occupation overflow in identification: combined occupation {total} exceeds N_max {n_max}")]
    OccupationOverflow { total: u32, n_max: u32 },

    #[error("non-uniform momentum grid: position localizer needs equal mode spacing")]
    NonUniformGrid,

    #[error("eigensolver did not converge within {iterations} iterations (residual {residual})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("linear solve failed at shift z = {z_re} + {z_im}i: {reason}")]
    SolveFailure { z_re: f64, z_im: f64, reason: String },

    #[error("cut energy {lambda} collides with eigenvalue {eigenvalue} (gap {gap} < tol)")]
    EigenvalueCollision {
        lambda: f64,
        eigenvalue: f64,
        gap: f64,
    },

    #[error("Dirichlet restriction at R = {r} leaves an empty subspace")]
    EmptySubspace { r: f64 },

    #[error("certification failure: {what} (margin {margin})")]
    CertificationFailure { what: String, margin: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-monotone sigma_R values at index {index}: {prev} > {next}")]
    NonMonotone { index: usize, prev: f64, next: f64 },

    #[error("parse error in operator file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
