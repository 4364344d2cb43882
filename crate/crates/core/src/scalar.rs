//! Coefficient scalar abstraction for the series ring.

use num_traits::{FromPrimitive, One, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

/// Bundle of num-traits bounds required of a series coefficient.
///
/// The series types are generic over this; the crate instantiates them at
/// [`crate::Rat`] (arbitrary-precision rationals). Any field-like numeric
/// type satisfying the bounds (including `f64`) works, but note that the
/// normalization step drops coefficients that compare equal to zero, so
/// only exact scalars give meaningful equality semantics.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar from i64")
    }

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}
