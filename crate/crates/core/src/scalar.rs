//! Scalar abstraction shared by every module.
//!
//! All matrix code is written against [`Real`] (the real coefficient type of
//! a reduced biquaternion) and, for the dense kernels, against
//! `nalgebra::ComplexField<RealField = T>` so the same routine serves real
//! and complex matrices.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use nalgebra::{Complex, ComplexField, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point coefficient type: `f32` or `f64`.
pub trait Real:
    RealField
    + Field<Re = Self>
    + Copy
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Display
    + LowerExp
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only for values the type cannot
    /// represent at all, which never happens for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// Machine epsilon of the type.
    #[inline]
    fn eps() -> Self {
        Self::default_epsilon()
    }

    #[inline]
    fn as_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Dense-kernel element: a real [`Real`] or a `Complex<Real>`.
pub trait Field: ComplexField<RealField = <Self as Field>::Re> + Copy + Send + Sync {
    type Re: Real;
}

impl Field for f32 {
    type Re = f32;
}
impl Field for f64 {
    type Re = f64;
}
impl<T: Real> Field for Complex<T> {
    type Re = T;
}
