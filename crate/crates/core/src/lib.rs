//! Desk-scale numerics for lattice electron-photon systems: a truncated
//! Fock-space second-quantization engine, discretized Hamiltonians with
//! UV/IR cutoffs, ionization-threshold computations, and exponential
//! electron-localization certificates.
//!
//! All core math is generic over the real scalar type (`f32`/`f64`);
//! concrete `f64` aliases for the main types live at the crate root.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod model;
pub mod profile;
pub mod rng;
pub mod scalar;
pub mod spectral;
pub mod tol;

pub use error::{CoreError, Result};
pub use scalar::{Scalar, C};

/// `f64` instantiations of the main data types.
pub type FockOperator64 = fock::FockOperator<f64>;
pub type ModeBasis64 = fock::ModeBasis<f64>;
pub type FockBasis64 = fock::FockBasis<f64>;
pub type OneBosonVector64 = fock::OneBosonVector<f64>;
pub type OneBosonMatrix64 = fock::OneBosonMatrix<f64>;
