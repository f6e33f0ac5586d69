//! Exact scalars, integer/rational vectors, and lattice rank tests.

mod lattice;
mod linalg;
mod rat;

pub use lattice::{hermite_basis, lattice_span, primitive, primitive_canonical, LatticeSpan};
pub use linalg::{det_int, det_rat, rank, solve};
pub use rat::{
    dot_int_rat, dot_rat, format_rat, int, int_vec, parse_rat, rat, rat_vec, ratio, to_rat_vec, IntVec,
    Rat, RatVec,
};
