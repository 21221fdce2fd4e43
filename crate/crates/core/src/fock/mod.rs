//! Truncated bosonic Fock space over a finite mode set, with the
//! second-quantization operators and identities used by the model and
//! threshold modules.

mod basis;
mod ident;
mod onebody;
mod operator;
mod ops;

pub use basis::{build_fock_basis, build_fock_basis_with_cap, fock_dimension, FockBasis, Mode, ModeBasis, OccupationVector, DEFAULT_DIMENSION_CAP};
pub use ident::Identification;
pub use onebody::{one_boson_translation, position_localizer, OneBosonMatrix, OneBosonVector};
pub use operator::{FockOperator, PartTag};
pub use ops::{annihilation_op, creation_op, dgamma, gamma, number_op};
