//! Scalar abstractions shared by every numerical kernel.
//!
//! [`Real`] covers the floating-point field (`f32`, `f64`); [`Scalar`] covers
//! the entry type of a matrix, which is either a real or a complex number over
//! a [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, Num, NumCast, Zero};

/// Floating-point field: f32 or f64.
pub trait Real:
    Float
    + FromPrimitive
    + NumCast
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Send
    + Sync
    + 'static
{
    /// Multiplier applied to tolerances that are stated for double precision.
    const TOLERANCE_SCALE: f64;

    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// A double-precision tolerance adapted to this precision. Never below a
    /// small multiple of the machine epsilon.
    fn tol(x: f64) -> Self {
        let scaled = Self::of(x * Self::TOLERANCE_SCALE);
        scaled.max(Self::epsilon() * Self::of(4.0))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const TOLERANCE_SCALE: f64 = 1.0e6;
}

impl Real for f64 {
    const TOLERANCE_SCALE: f64 = 1.0;
}

/// Matrix entry type: a real number or a complex number over a [`Real`].
pub trait Scalar:
    Copy
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + PartialEq
    + Debug
    + Default
    + Send
    + Sync
    + 'static
{
    type Real: Real;

    const IS_COMPLEX: bool;

    fn from_real(r: Self::Real) -> Self;
    /// Builds `re + i·im`; the imaginary part is dropped for real scalars.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    fn conj(self) -> Self;
    /// Modulus.
    fn modulus(self) -> Self::Real;
    fn modulus_sqr(self) -> Self::Real;

    fn scale(self, r: Self::Real) -> Self {
        self * Self::from_real(r)
    }

    fn is_finite(self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }

    /// `self / |self|`, or one for zero.
    fn phase(self) -> Self {
        let m = self.modulus();
        if m == Self::Real::zero() {
            Self::one()
        } else {
            self.scale(m.recip())
        }
    }
}

macro_rules! impl_real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;

            #[inline]
            fn from_real(r: $t) -> Self {
                r
            }
            #[inline]
            fn from_parts(re: $t, _im: $t) -> Self {
                re
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
            #[inline]
            fn modulus_sqr(self) -> $t {
                self * self
            }
        }
    };
}

macro_rules! impl_complex_scalar {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            type Real = $t;
            const IS_COMPLEX: bool = true;

            #[inline]
            fn from_real(r: $t) -> Self {
                Complex::new(r, 0.0)
            }
            #[inline]
            fn from_parts(re: $t, im: $t) -> Self {
                Complex::new(re, im)
            }
            #[inline]
            fn re(self) -> $t {
                self.re
            }
            #[inline]
            fn im(self) -> $t {
                self.im
            }
            #[inline]
            fn conj(self) -> Self {
                Complex::conj(&self)
            }
            #[inline]
            fn modulus(self) -> $t {
                self.norm()
            }
            #[inline]
            fn modulus_sqr(self) -> $t {
                self.norm_sqr()
            }
            #[inline]
            fn scale(self, r: $t) -> Self {
                Complex::new(self.re * r, self.im * r)
            }
        }
    };
}

impl_real_scalar!(f32);
impl_real_scalar!(f64);
impl_complex_scalar!(f32);
impl_complex_scalar!(f64);

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn tolerance_scaling() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert!(f32::tol(1e-12) >= 4.0 * f32::EPSILON);
        assert!(f32::tol(1e-10) > 1e-5);
    }

    #[test]
    fn complex_phase_and_modulus() {
        let z = Complex64::new(3.0, 4.0);
        assert_eq!(z.modulus(), 5.0);
        let ph = z.phase();
        assert!((ph.modulus() - 1.0).abs() < 1e-15);
        assert_eq!(Complex64::new(0.0, 0.0).phase(), Complex64::new(1.0, 0.0));
        assert_eq!((-2.0f64).phase(), -1.0);
    }
}
