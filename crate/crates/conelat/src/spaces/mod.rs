//! Ordered spaces: cones, norms and the order they induce.

mod cone;
mod norm;
mod polyhedral;
mod space;

pub use cone::{Cone, PolyNonneg, DEFAULT_POLY_GRID};
pub use norm::NormSpec;
pub use polyhedral::{dykstra_halfspaces, nnls, nnls_project, Polyhedral, MAX_ENUMERATION_DIM};
pub use space::{ConeJson, OrderedSpace, SpaceJson, MEMBERSHIP_TOL};

pub(crate) use cone::basis;
