//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the toolkit is generic over (`f32` or `f64`).
///
/// Besides the arithmetic bounds, each implementation supplies the default
/// tolerances used when no explicit tolerance is passed: `merge_eps` for
/// angular endpoint merging and `geom_eps` for point/length comparisons.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance for merging angular interval endpoints.
    fn merge_eps() -> Self;
    /// Uniform geometric comparison tolerance.
    fn geom_eps() -> Self;

    /// Converts an `f64` literal. Panics only if the value is not representable,
    /// which cannot happen for finite literals and the float types implementing this trait.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    #[inline]
    fn merge_eps() -> Self {
        1e-12
    }
    #[inline]
    fn geom_eps() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    #[inline]
    fn merge_eps() -> Self {
        1e-6
    }
    #[inline]
    fn geom_eps() -> Self {
        1e-4
    }
}
