//! Finite quandles represented by their operation matrices.
//!
//! Element indices are 1-based throughout: entry `(i, j) = k` of a
//! [`QuandleTable`] means `x_i ▷ x_j = x_k`.

pub mod actions;
pub mod amalgam;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod format;
pub mod generators;
pub mod isomorph;
pub mod limits;
pub mod perm;
mod search;
pub mod table;

pub use actions::{
    automorphisms, enumerate_rack_actions, is_automorphism, verify_rack_action, ActionViolation, RackAction,
};
pub use amalgam::{
    assemble, enumerate_nonconnected, extract_structure_maps, glue2, glue_n, structure_maps_isomorphic,
    CompatibilityViolation, StructureMaps,
};
pub use decomp::{
    all_subquandles, is_closed_subset, is_complemented, is_connected, minimal_complemented, orbit,
    orbit_decomposition, subquandle_depth, OrbitDecomposition,
};
pub use error::{QuandleError, Result};
pub use isomorph::{are_isomorphic, canonical_form, census};
pub use limits::Limits;
pub use perm::Permutation;
pub use table::{validate, AxiomViolation, QuandleTable};
