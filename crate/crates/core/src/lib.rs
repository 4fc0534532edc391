//! Fusion calculus for four families of vertex operator algebra module
//! categories: Virasoro minimal models, Heisenberg and Π(0) lattice-type
//! theories, the singlet algebras M(p), and affine sl2 at admissible level.
//!
//! Kernels are generic over the float type through [`Real`]. Exact data
//! (conformal weights, levels, rational phases) use [`Rational64`].

pub mod checks;
pub mod error;
pub mod labels;
pub mod resolution;
pub mod scalar;
pub mod semisimple;
pub mod singlet;
pub mod sl2;
pub mod theory;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use num_rational::Rational64;

use std::fmt::{Debug, Display};

/// Floating point scalar used by every numeric kernel.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from f64 constants.
    fn c(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).expect("f64 constant")
    }
    /// Lossy conversion from an integer.
    fn n(x: i64) -> Self {
        <Self as num_traits::FromPrimitive>::from_i64(x).expect("integer constant")
    }
    /// Conversion of an exact rational.
    fn q(x: Rational64) -> Self {
        Self::n(*x.numer()) / Self::n(*x.denom())
    }
    fn f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type Tolerance64 = scalar::Tolerance<f64>;
pub type SpectralPoint64 = scalar::SpectralPoint<f64>;
pub type TheoryConfig64 = theory::TheoryConfig<f64>;
pub type Sl2Label64 = labels::Sl2Label<f64>;
pub type SingletLabel64 = labels::SingletLabel<f64>;
pub type PiLabel64 = labels::PiLabel<f64>;
pub type HeisenbergTheory64 = semisimple::HeisenbergTheory<f64>;
pub type QEvaluation64 = resolution::QEvaluation<f64>;
pub type ProjectiveObject64 = sl2::ProjectiveObject<f64>;
