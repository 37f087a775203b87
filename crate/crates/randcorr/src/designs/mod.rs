//! Spherical and unitary t-designs: construction, projection, verification
//! and serialization.

pub mod io;
pub mod spherical;
pub mod unitary;

pub use io::{design_json, load_design, save_design, Design};
pub use spherical::{
    icosahedron_design, octahedron_design, verify_spherical_design, DesignCheck, SphericalDesign,
};
pub use unitary::{clifford_group_1q, project_to_sphere, sl2f5_design, UnitaryDesign};
