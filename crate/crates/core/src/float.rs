//! Scalar abstraction for the numeric kernels.
//!
//! Everything under [`crate::qsim`], [`crate::ansatz`] and [`crate::nn`] is
//! generic over [`Scalar`] so the same kernels run in `f32` or `f64`. The
//! shipped pipeline uses [`crate::Real`] (= `f64`); tolerances that depend on
//! the working precision live here instead of being sprinkled as literals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssignOps};

pub trait Scalar:
    Float + FloatConst + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance for norm / hermiticity / unitarity checks.
    fn norm_tol() -> Self;

    fn from_f64(v: f64) -> Self;

    fn to_f64(self) -> f64;
}

macro_rules! scalar_impl {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            #[inline]
            fn norm_tol() -> Self {
                $tol
            }

            #[inline]
            fn from_f64(v: f64) -> Self {
                v as $t
            }

            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

scalar_impl!(f64, 1e-10);
scalar_impl!(f32, 1e-4);
