use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point type the solver is generic over.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance used by `Tolerance::default()`.
    fn default_rel_tol() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in the scalar type")
    }
}

impl Scalar for f32 {
    fn default_rel_tol() -> Self {
        1e-3
    }
}

impl Scalar for f64 {
    fn default_rel_tol() -> Self {
        1e-9
    }
}

pub(crate) fn max3<T: Scalar>(a: T, b: T, c: T) -> T {
    a.max(b).max(c)
}

pub(crate) fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
