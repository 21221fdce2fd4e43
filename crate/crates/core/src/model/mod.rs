//! Discretized electron+field Hamiltonians: model descriptions, assembly
//! with part-wise bookkeeping, restrictions and variants, and the
//! operator-inequality checks.

mod assemble;
mod checks;
mod grid;
mod space;
mod spec;
mod transform;

pub use assemble::{assemble_hamiltonian, build_form_factor, AssembledHamiltonian};
pub use checks::{
    field_bound_check, localization_error, soft_sector_check, FieldBoundReport, SoftSectorReport,
};
pub use grid::ElectronGrid;
pub use space::{ElectronSpace, ReductionMap};
pub use spec::{CouplingSpec, ModelSpec, PotentialSpec, Statistics};
pub use transform::{dirichlet_restrict, drop_external_potential, ir_cutoff_variant, RestrictedHamiltonian};
