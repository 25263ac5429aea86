//! Finite abelian groups, their representation rings and class functions.
//!
//! Elements and irreducible characters are both indexed by tuples reduced
//! modulo the cyclic orders; characters are enumerated lexicographically.

mod classfun;
mod group;
mod rep;
mod subgroup;

pub use classfun::ClassFunction;
pub use group::{FiniteAbelianGroup, GroupElement, Irrep, MAX_GROUP_ORDER};
pub use rep::{dual_pairing_matrix, RepRingElement};
pub use subgroup::{Embedding, Quotient};
