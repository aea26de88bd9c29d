//! Exact and heuristic solvers for the anchored-rectangle cake-cutting game.
//!
//! Alice places points in the unit square, the origin among them; Bob cuts
//! axis-parallel rectangles with interior-disjoint, point-free interiors,
//! each anchored by its lower-left corner at one of the points. The crate
//! computes Bob's optimal share exactly for small point sets, bounds it
//! greedily for larger ones, generates adversarial point sets, and checks
//! the staircase-decomposition inequalities on concrete instances.

pub mod bounds;
pub mod error;
pub mod heuristics;
pub mod model;
pub mod scalar;
pub mod solver;
pub mod staircase;
pub mod strategies;

pub use error::{Error, Result};
pub use model::{interiors_disjoint, rect_area, validate_packing, AnchoredRect, Instance, Packing, Point};
pub use scalar::Scalar;
