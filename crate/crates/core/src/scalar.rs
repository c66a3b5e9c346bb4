use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

use crate::Rational;

/// Floating-point scalar used for numeric evaluation: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    fn from_rational(q: Rational) -> Self {
        Self::from_i64(*q.numer()).unwrap() / Self::from_i64(*q.denom()).unwrap()
    }

    fn from_count(k: usize) -> Self {
        Self::from_usize(k).unwrap()
    }

    /// Clamps into `[0, 1]`, reporting whether the value moved.
    /// NaN clamps to 0.
    fn clamp_unit(self) -> (Self, bool) {
        if self.is_nan() || self < Self::zero() {
            (Self::zero(), true)
        } else if self > Self::one() {
            (Self::one(), true)
        } else {
            (self, false)
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
