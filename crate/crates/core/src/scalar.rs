//! Scalar traits the geometry is generic over.
//!
//! [`Coord`] is the ring-like bound used by the shoelace area code; it is
//! satisfied by `f32`, `f64` and exact rationals such as
//! [`num_rational::Rational64`], so oriented areas can be evaluated without
//! rounding. [`Real`] adds the floating point operations needed for norms,
//! tolerances and direction cosines.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{Float, FromPrimitive, Num, NumAssign};

/// Coordinates that support exact ring arithmetic.
pub trait Coord: nalgebra::Scalar + Copy + Num + NumAssign + FromPrimitive + Neg<Output = Self> {}

impl<T> Coord for T where T: nalgebra::Scalar + Copy + Num + NumAssign + FromPrimitive + Neg<Output = Self> {}

/// Floating point scalars: `f32` or `f64`.
pub trait Real: Coord + Float + FromPrimitive + Display + Debug + Send + Sync {
    /// Converts an `f64` constant into `Self`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
