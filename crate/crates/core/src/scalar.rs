use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar used by every matrix and polynomial in the crate.
///
/// Implemented for the machine integers and for [`BigInt`]. Machine
/// integers are meant for hot exhaustive sweeps (build with overflow checks
/// on); [`BigInt`] is the default everywhere else.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Embeds a small constant. Panics if the scalar cannot hold it.
    fn lift(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar cannot hold i64 value")
    }

    fn lift_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("scalar cannot hold usize value")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Arbitrary-precision default scalar.
pub type Int = BigInt;
