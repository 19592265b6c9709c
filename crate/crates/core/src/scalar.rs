//! Scalar abstraction shared by every numeric kernel in the crate.
//!
//! [`Real`] bundles the floating-point capabilities the solvers rely on:
//! `num_traits` arithmetic and transcendentals, conversions, formatting,
//! serde support, and sampling hooks for the simulation module. `f32` and
//! `f64` are the two implementations; concrete aliases for the `f64`
//! instantiations of the domain types live at the crate root.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::Distribution;
use serde::de::DeserializeOwned;
use serde::Serialize;

pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Draws a sample from the standard normal distribution.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draws a sample uniform over `[0, 1)`.
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Real for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rand_distr::StandardNormal.sample(rng)
    }

    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random()
    }
}

impl Real for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rand_distr::StandardNormal.sample(rng)
    }

    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random()
    }
}

/// Lifts an `f64` constant into `F`. Panics only if the target type cannot
/// represent the value at all, which never happens for the literals baked
/// into this crate.
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("constant representable in scalar type")
}
