//! Exact arithmetic in ℤG and ℚG and the integer-lattice kernel
//! (Hermite and Smith normal forms) used by the filtration code.

mod element;
mod inverse;
mod lattice;
mod rational;
mod smith;

pub use element::{ElementJson, GroupRingElement};
pub(crate) use element::same_group;
pub use inverse::inverse_in_ring;
pub use lattice::{hnf, IntegerLattice};
pub use rational::{rational_span, solve, RationalSubspace};
pub use smith::{smith_diagonal, smith_invariants};
