//! Exact combinatorics for fixed point portraits of polynomial maps.
//!
//! A portrait is a family of rotation sets for `θ ↦ dθ mod 1`. Admissible
//! portraits are realized here as expanding abstract Hubbard trees, every
//! tree axiom is checked, and the portrait is read back off the tree from
//! the counterclockwise boundary walk and the uniqueness of rotation sets.

pub mod angle;
pub mod builder;
pub mod certify;
pub mod error;
pub mod format;
pub mod portrait;
pub mod recovery;
pub mod rotation;
pub mod svg;
pub mod tree;

pub use angle::{fixed_angles, in_open_arc, map_angle, normalize_angle, Angle, Degree};
pub use builder::{
    assemble_tree, build_regions, critical_capacities, elementary_arcs, region_dynamics,
    vertex_dynamics, ConstructedTree, ElementaryArc, Region, Sector,
};
pub use certify::{certify, Report};
pub use error::{Error, Result};
pub use format::{parse_portrait, print_portrait};
pub use portrait::{
    enumerate_portraits, separates, unlinked, validate_portrait, Portrait, ValidPortrait,
    Validation, Violation, ViolationCode,
};
pub use recovery::{boundary_walk, recover_portrait, sector_map, BoundaryWalk};
pub use rotation::{
    classify_rotation_set, deployment_vector, enumerate_rotation_sets, generate_rotation_set,
    DeploymentVector, RotationSet,
};
pub use svg::render_svg;
pub use tree::{
    check_degree_angle, check_expanding, check_julia_normalization, check_tree_axioms,
    classify_vertices, count_fixed_points, edge_image_path, AngledTree, TreeCheck, TreeViolation,
    VertexClass, VertexId, VertexKind,
};
