//! Numeric carriers for cell values.
//!
//! Three carriers are used throughout: `i64` for integer-valued kernels,
//! [`Rational`] for exact work with denominators, and `f64` for the float
//! mode. All of them share the [`Scalar`] interface; the two that support
//! division by integers also implement [`Field`].

use std::fmt::Debug;
use std::ops::AddAssign;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};

/// Exact arbitrary-precision fraction, always reduced with positive denominator.
pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Send + Sync + Signed + for<'a> AddAssign<&'a Self> + 'static
{
    /// True when arithmetic on this carrier is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact value of this scalar as a fraction.
    fn to_rational(&self) -> Rational;

    fn mul_i64(&self, k: i64) -> Self {
        self.clone() * Self::from_i64(k)
    }
}

/// Scalars closed under division by nonzero integers.
pub trait Field: Scalar {
    fn div_i64(&self, d: i64) -> Self;

    /// Converts a binary float. Exact carriers take the float's exact value.
    fn from_f64(v: f64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div_i64(den)
    }
}

impl Scalar for i64 {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }

    fn mul_i64(&self, k: i64) -> Self {
        self * k
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).expect("finite float")
    }

    fn mul_i64(&self, k: i64) -> Self {
        self * k as f64
    }
}

impl Field for f64 {
    fn div_i64(&self, d: i64) -> Self {
        self / d as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Fall back on a scaled division when numerator/denominator overflow f64.
            let num = self.numer().to_f64().unwrap_or(f64::NAN);
            let den = self.denom().to_f64().unwrap_or(f64::NAN);
            num / den
        })
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn mul_i64(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
}

impl Field for Rational {
    fn div_i64(&self, d: i64) -> Self {
        self / BigInt::from(d)
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite float")
    }
}

/// Exact rational `num / 2^shift`.
pub fn dyadic_rational(num: BigInt, shift: u32) -> Rational {
    Rational::new(num, BigInt::one() << shift as usize)
}
