//! Floating-point scalar abstraction: f32 or f64.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Real scalar the model is generic over.
///
/// Everything the kernels need is `Float` arithmetic plus π and iterator
/// sums; both `f32` and `f64` satisfy the bounds.
pub trait Scalar: Float + FloatConst + NumAssign + Sum + Debug + Display + 'static {
    /// Lossless-enough conversion from an `f64` literal or precomputed constant.
    fn of(v: f64) -> Self {
        Self::from(v).expect("constant representable in scalar type")
    }

    /// 2π, the linear-frequency to angular-frequency factor.
    fn tau() -> Self {
        Self::PI() + Self::PI()
    }
}

impl<T> Scalar for T where T: Float + FloatConst + NumAssign + Sum + Debug + Display + 'static {}
