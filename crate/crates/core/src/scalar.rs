//! Real scalar abstraction backing all complex linear algebra.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar: f32 or f64.
///
/// Every matrix in this crate holds `Complex<S>` entries for some `S: Scalar`.
/// Default tolerances are stated for f64; override them per call when working
/// in f32.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Convert an f64 constant into this scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant not representable")
    }

    /// Lossy view as f64, for diagnostics and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over a generic real scalar.
pub type C<S> = Complex<S>;

/// Purely real complex value.
pub fn cre<S: Scalar>(x: S) -> C<S> {
    Complex::new(x, S::zero())
}

/// Purely imaginary complex value.
pub fn cim<S: Scalar>(x: S) -> C<S> {
    Complex::new(S::zero(), x)
}

/// The imaginary unit.
pub fn ci<S: Scalar>() -> C<S> {
    Complex::new(S::zero(), S::one())
}

/// Complex value from f64 parts.
pub fn clit<S: Scalar>(re: f64, im: f64) -> C<S> {
    Complex::new(S::lit(re), S::lit(im))
}
