//! Floating-point abstraction shared by every geometric type.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real number type the library is generic over (`f32` or `f64`).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Default absolute tolerance for unit-scale geometry.
    const DEFAULT_EPS: f64;
    /// Default maximal chord sagitta when arcs are discretized.
    const DEFAULT_SAGITTA: f64;

    /// Converts an `f64` literal; panics only for values outside the type's range.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::infinity)
    }
}

impl Scalar for f64 {
    const DEFAULT_EPS: f64 = 1e-9;
    const DEFAULT_SAGITTA: f64 = 1e-6;
}

impl Scalar for f32 {
    const DEFAULT_EPS: f64 = 1e-4;
    const DEFAULT_SAGITTA: f64 = 1e-3;
}

/// Total order for scalars where NaN sorts last.
#[inline]
pub fn cmp<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b)
        .unwrap_or_else(|| a.is_nan().cmp(&b.is_nan()))
}
