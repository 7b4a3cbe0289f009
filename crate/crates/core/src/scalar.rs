use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rustfft::FftNum;

/// Floating-point type the whole library is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + FftNum + Default + Display + Debug + Send + Sync + 'static
{
    /// Lossless for `f64`, rounding for `f32`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("representable count")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used when a structural property (root squares to -1, grade purity)
    /// has to hold up to rounding.
    fn structural_tol() -> Self {
        Self::epsilon() * Self::of(1.0e3)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + FftNum + Default + Display + Debug + Send + Sync + 'static
{
}
