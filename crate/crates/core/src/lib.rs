//! Exact geometry of numbers for lattice polytopes.
//!
//! Everything here runs on arbitrary-precision rationals: convex hulls and
//! facets, lattice points and normalized volumes, difference and polar
//! bodies, Minkowski successive minima, lattice width, toric Seshadri
//! successive minima, and exact verifiers for the inequalities relating them.

pub mod error;
pub mod gon;
pub mod math;
pub mod polytope;
pub mod postulation;
pub mod report;
pub mod suite;
pub mod toric;

pub use error::{Error, Result};
pub use gon::{SuccessiveMinima, WidthResult};
pub use math::{IntVec, Rat, RatVec};
pub use polytope::{PointLocation, Polytope, SymmetricBody};
pub use report::{Quantity, TheoremId, TheoremReport, Verdict};
pub use toric::{EpsEntry, EpsProfile, MomentPolytope, VertexCone};
