//! Scalar abstraction: all numeric kernels are generic over `Real`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the simulation math is written against.
/// Implemented for `f32` and `f64`; the engine instantiates `f64`.
pub trait Real:
    Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Conversion from an `f64` constant. Panics only if the target type
    /// cannot represent any finite approximation, which no IEEE type hits.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 constant")
    }

    fn two() -> Self {
        Self::of(2.0)
    }

    fn half() -> Self {
        Self::of(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}
