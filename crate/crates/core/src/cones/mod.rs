//! Rational polyhedral cones, cone complexes and cone spaces.

mod complex;
mod cone;
pub mod dd;
mod space;

pub use complex::{
    common_refinement, identity_matrix, is_subdivision, is_union_of_cones, same_cones, star_of_ray,
    ConeComplex, FaceMap, Regime, SubdivisionKind,
};
pub use cone::Cone;
pub use space::{ConeSpace, Morphism};
