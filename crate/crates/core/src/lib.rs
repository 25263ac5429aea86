//! Exact invariants of differential orbifold K-theory for quotients by
//! finite abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals, cyclotomic numbers, integer matrices (determinant,
//!   Smith normal form) and integer lattice membership.
//! * [`grouprep`]: finite abelian groups, virtual characters `R(G)`, class
//!   functions `C[G]^G` and the maps between them (trace, pairing, Chern
//!   character, induction, restriction, invariants, averaging, real structure).
//! * [`hatk_point`]: the groups `K̂⁰([*/G]) = R(G)` and
//!   `K̂¹([*/G]) = C[G]^G / ch(R(G)) ≅ R(G) ⊗ C/Z`.
//! * [`localize`]: sector decomposition and localization at the prime ideal
//!   of characters vanishing at an element.
//! * [`wproj`]: equivariant line bundles on `[CP¹/(Z/k)]`, their cohomology and
//!   the intersection pairing.
//! * [`mtorus`]: flat classes of mapping tori from holonomy data.
//! * [`json`]: the JSON interchange format used by the `orbk` CLI.

pub mod error;
pub mod exactnum;
pub mod grouprep;
pub mod hatk_point;
pub mod json;
pub mod localize;
pub mod mtorus;
pub mod wproj;

pub use error::{Error, Result};
pub use exactnum::{Cyclotomic, IntMatrix, Rational, SmithForm};
pub use grouprep::{ClassFunction, Embedding, FiniteAbelianGroup, GroupElement, Irrep, Quotient, RepRingElement};
pub use hatk_point::{HatKPoint, TorusClassFunction, TorusScalar};
pub use localize::SectorModule;
pub use wproj::{EquivLineBundle, KClassCP1};
pub use mtorus::{HolonomyData, MappingTorusClass};
