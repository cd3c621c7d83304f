//! Crossing sequences of simple monotone rotationally symmetric Venn diagrams:
//! construction of the crosscut-symmetric canonical form, validation,
//! backtracking search, and export.

pub mod artifacts;
pub mod cli;
pub mod counting;
pub mod form;
pub mod order;
pub mod search;
pub mod sequence;
pub mod trace;
pub mod validate;

pub use counting::{k_point_table, polar_crosscut_possible, KPointRow, KPointTable};
pub use form::{build_sigma, canonical_parts, mirror_alpha, ClusterForm, FormError};
pub use order::{sequence_lengths, DiagramOrder, OrderError};
pub use sequence::CrossingSequence;
pub use trace::foata_normal_form;
pub use validate::region::RegionSet;
pub use validate::{validate_full, validate_symmetric, ValidDiagram, ValidationReport};
