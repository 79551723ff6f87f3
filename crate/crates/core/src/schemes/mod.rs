//! Affine schemes with vector fields, invariant opens, and vector fields
//! on projective space.

pub mod affine;
pub mod open;
pub mod projective;

pub use affine::{is_leaf, make_affine, AffineDiffScheme};
pub use open::{cf_topology_laws, greatest_invariant_closed, is_invariant_open, u_delta, CfLawsReport, OpenSet};
pub use projective::{
    characteristic_polynomial, projective_field_from_matrix, projective_rational_leaves, ProjectiveLeaf,
    ProjectiveLeavesReport, ProjectiveVectorField,
};
