//! Eigensolvers, spectral projectors, shifted resolvent solves and the
//! almost-analytic functional calculus.

pub mod bump;
mod eigs;
mod hs;
mod lanczos;
mod projector;
mod solve;

pub use bump::{GammaCutoff, SmoothBumpSpec};
pub use eigs::{eigs_lowest, eigs_lowest_with, EigMethod, EigenResult, SolverOptions};
pub use hs::{hs_apply, hs_function, HsQuadratureSpec};
pub use lanczos::lanczos_lowest;
pub use projector::spectral_projector;
pub use solve::{shifted_solve, ShiftedSolveOptions};
