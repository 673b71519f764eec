//! Topology of the real points of smooth complete toric surfaces.
//!
//! Starting from a fan, [`gluing::build_real_complex`] glues four copies of
//! the polygon into a cell complex for X(ℝ); [`homology`] and [`classify`]
//! then identify the surface, and [`classify::verify`] checks the result
//! against the classification predicted from the fan alone.

pub mod classify;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod gluing;
pub mod homology;
pub mod lattice;
pub mod moment;
pub mod random;
pub mod snf;

pub use classify::{
    classify_surface, euler_formula, orientable_fast, predict_theorem, verify, verify_all,
    SurfaceType, VerificationReport,
};
pub use divisor::{
    find_ample, intersection_numbers, is_ample, polygon_from_divisor, LatticePolygon, ToricDivisor,
};
pub use error::{Error, Result};
pub use fan::{BlowDownStep, Fan, Recognized};
pub use gluing::{
    build_real_complex, build_real_complex_from_polytope, tubular_neighborhood, CellComplex,
    GluingRule, NeighborhoodType, SignHom,
};
pub use homology::{euler_from_cells, homology, HomologyProfile};
pub use lattice::{LatticeVector, UnimodularMap};
pub use random::{corpus, random_fan};
pub use snf::{smith_normal_form, BigMatrix, SmithForm};
