use core::fmt::Debug;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Arithmetic domain a solve runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    RealVector,
    /// Only valid for linear scalar problems; used to evaluate `ρ(z)`.
    ComplexScalar,
}

/// Field element used for states. Implemented for `f64` and [`Complex64`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Mul<f64, Output = Self>
    + 'static
{
    const FIELD: ScalarField;

    fn from_real(x: f64) -> Self;

    /// Absolute value (modulus for complex numbers).
    fn modulus(self) -> f64;

    fn is_finite(self) -> bool;

    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::from_real(0.0)
    }

    fn one() -> Self {
        Self::from_real(1.0)
    }
}

impl Scalar for f64 {
    const FIELD: ScalarField = ScalarField::RealVector;

    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }

    #[inline]
    fn modulus(self) -> f64 {
        libm::fabs(self)
    }

    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    #[inline]
    fn exp(self) -> Self {
        libm::exp(self)
    }
}

impl Scalar for Complex64 {
    const FIELD: ScalarField = ScalarField::ComplexScalar;

    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    #[inline]
    fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
}

/// Max-norm of a slice.
pub(crate) fn max_norm<S: Scalar>(v: &[S]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.modulus()))
}
