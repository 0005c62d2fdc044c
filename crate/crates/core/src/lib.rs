//! lcm-lattices of monomial ideals, their multigraded Betti numbers and
//! minimal free resolutions, rigidity and related predicates, and the poset
//! `L(n)` of finite atomic lattices on `n` ordered atoms.

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod explorer;
pub mod field;
pub mod homology;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod resolution;

pub use field::{FieldSpec, Scalar};
pub use lattice::{FiniteAtomicLattice, LcmLattice, Poset, Support};
pub use monomial::{Monomial, MonomialIdeal};
pub use resolution::MultigradedFreeResolution;
