//! Integral group rings of finite groups: augmentation-power filtrations,
//! dimension subgroups, canonical unit families and the classifiers built
//! on top of them.
//!
//! The lattice kernel in [`zring`] is generic over its scalar type through
//! `num-traits`; everything above it works with the arbitrary-precision
//! aliases defined here.

pub mod cli;
pub mod error;
pub mod filtration;
pub mod group;
pub mod scalar;
pub mod theorems;
pub mod units;
pub mod zring;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use filtration::{DeltaChain, DeltaDepth, DimensionSeriesReport};
pub use group::{FiniteGroup, GroupRef, QuotientGroup, Subgroup};
pub use units::{Provenance, UnitRecord};

/// Arbitrary-precision integers used for all ℤG coefficients.
pub type Int = BigInt;
/// Exact rationals used for ℚG and rational elimination.
pub type Rational = BigRational;

/// An element of ℤG.
pub type ZElement = zring::GroupRingElement<Int>;
/// An element of ℚG.
pub type QElement = zring::GroupRingElement<Rational>;
/// A sublattice of ℤ^|G| in canonical Hermite normal form.
pub type Lattice = zring::IntegerLattice<Int>;
/// A subspace of ℚ^|G| in reduced row echelon form.
pub type Subspace = zring::RationalSubspace<Rational>;

/// Resource caps shared by the library and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub max_order: usize,
    pub max_depth: usize,
    pub torsion_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 512, max_depth: 16, torsion_bound: 100 }
    }
}

/// Depth used when no `--depth` is given.
pub const DEFAULT_DEPTH: usize = 12;
