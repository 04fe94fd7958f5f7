//! Scalar bounds for the lattice kernel.
//!
//! The kernel never names a concrete number type. `BigInt`/`BigRational`
//! are the production instantiations; fixed-width integers work too as long
//! as intermediate values fit.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_traits::{Num, Signed};

/// A commutative ring with identity: enough for group-ring arithmetic.
pub trait RingScalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {}

impl<T> RingScalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {}

/// A Euclidean ring with floor division and extended gcd (ℤ or a fixed-width stand-in).
pub trait IntegerScalar: RingScalar + Integer + Signed + Ord {}

impl<T> IntegerScalar for T where T: RingScalar + Integer + Signed + Ord {}

/// A field with exact division (ℚ in practice).
pub trait FieldScalar: RingScalar + Signed {}

impl<T> FieldScalar for T where T: RingScalar + Signed {}
