//! Exact scalar arithmetic and integer linear algebra.

mod cyclotomic;
mod lattice;
mod matrix;
mod rational;

pub use cyclotomic::{max_conductor, set_max_conductor, Cyclotomic, DEFAULT_MAX_CONDUCTOR};
pub use lattice::IntLattice;
pub use matrix::{IntMatrix, SmithForm};
pub use rational::{format_rational, parse_rational, rat, Rational};
