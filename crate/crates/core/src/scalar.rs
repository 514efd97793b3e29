//! Coefficient types the polynomial engine is generic over.
//!
//! Exact algorithms (division, gcd, resultants, rational roots) are gated on
//! the [`Exact`] marker; evaluation and arithmetic work for every [`Scalar`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative field-like coefficient type.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    fn to_complex(&self) -> Complex64;

    /// Magnitude used for pivot selection and scaling.
    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

/// Coefficient types with exact zero testing.
pub trait Exact: Scalar {
    /// A scalar that, divided out, leaves the values small and integral
    /// (for rationals: the gcd of numerators over the lcm of denominators).
    fn common_scale<'a>(values: impl Iterator<Item = &'a Self>) -> Self
    where
        Self: 'a;

    fn to_rational(&self) -> BigRational;

    fn from_rational(q: BigRational) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Exact for BigRational {
    fn common_scale<'a>(values: impl Iterator<Item = &'a Self>) -> Self {
        let values: Vec<&BigRational> = values.collect();
        let l = values.iter().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let g = values.iter().fold(BigInt::zero(), |acc, c| {
            num_integer::Integer::gcd(&acc, &(c.numer() * (&l / c.denom())))
        });
        if g.is_zero() {
            return BigRational::one();
        }
        BigRational::new(g, l)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self as f64, 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Converts a rational to the nearest double, including values whose
/// numerator and denominator overflow `f64` separately.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    if nb < 1000 && db < 1000 {
        let n = q.numer().to_f64().unwrap_or(0.0);
        let d = q.denom().to_f64().unwrap_or(1.0);
        return n / d;
    }
    let sn = (nb - 64).max(0);
    let sd = (db - 64).max(0);
    let n = (q.numer() >> sn as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> sd as usize).to_f64().unwrap_or(1.0);
    let exp = (sn - sd).clamp(-2000, 2000) as i32;
    (n / d) * 2f64.powi(exp)
}

/// Relative tolerance under which a [`Tracked`] value counts as zero.
pub const TRACKED_TOL: f64 = 1e-7;

/// A complex float carrying a running bound on the magnitude of the terms
/// that produced it.
///
/// Zero testing is relative: `|value| <= TRACKED_TOL * magnitude`. This is a
/// cheap running error analysis, enough to separate genuine cancellation
/// from rounding noise in the numeric branches of the elimination solver.
#[derive(Clone, Copy)]
pub struct Tracked {
    pub value: Complex64,
    pub magnitude: f64,
}

impl Tracked {
    pub fn new(value: Complex64) -> Self {
        Tracked {
            value,
            magnitude: value.norm(),
        }
    }

    pub fn with_magnitude(value: Complex64, magnitude: f64) -> Self {
        Tracked {
            value,
            magnitude: magnitude.max(value.norm()),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Tracked::new(Complex64::new(rational_to_f64(q), 0.0))
    }

    /// Ratio of the value to the magnitude of its contributions.
    pub fn relative(&self) -> f64 {
        if self.magnitude == 0.0 {
            0.0
        } else {
            self.value.norm() / self.magnitude
        }
    }
}

impl fmt::Debug for Tracked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{:.1e}", self.value, self.magnitude)
    }
}

impl PartialEq for Tracked {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl Zero for Tracked {
    fn zero() -> Self {
        Tracked {
            value: Complex64::zero(),
            magnitude: 0.0,
        }
    }

    fn is_zero(&self) -> bool {
        self.value.norm() <= TRACKED_TOL * self.magnitude
    }
}

impl One for Tracked {
    fn one() -> Self {
        Tracked::new(Complex64::one())
    }
}

impl Add for Tracked {
    type Output = Tracked;
    fn add(self, rhs: Tracked) -> Tracked {
        let value = self.value + rhs.value;
        Tracked::with_magnitude(value, self.magnitude + rhs.magnitude)
    }
}

impl Sub for Tracked {
    type Output = Tracked;
    fn sub(self, rhs: Tracked) -> Tracked {
        let value = self.value - rhs.value;
        Tracked::with_magnitude(value, self.magnitude + rhs.magnitude)
    }
}

impl Mul for Tracked {
    type Output = Tracked;
    fn mul(self, rhs: Tracked) -> Tracked {
        let value = self.value * rhs.value;
        Tracked::with_magnitude(value, self.magnitude * rhs.magnitude)
    }
}

impl Div for Tracked {
    type Output = Tracked;
    fn div(self, rhs: Tracked) -> Tracked {
        let value = self.value / rhs.value;
        let denom = rhs.value.norm();
        let magnitude = if denom > 0.0 {
            self.magnitude / denom
        } else {
            f64::INFINITY
        };
        Tracked::with_magnitude(value, magnitude)
    }
}

impl Neg for Tracked {
    type Output = Tracked;
    fn neg(self) -> Tracked {
        Tracked {
            value: -self.value,
            magnitude: self.magnitude,
        }
    }
}

impl Scalar for Tracked {
    fn from_i64(n: i64) -> Self {
        Tracked::new(Complex64::new(n as f64, 0.0))
    }

    fn to_complex(&self) -> Complex64 {
        self.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(&big * BigInt::from(3), &big * BigInt::from(2));
        assert_eq!(rational_to_f64(&r), 1.5);
        let tiny = BigRational::new(BigInt::one(), BigInt::from(10).pow(320));
        assert!(rational_to_f64(&tiny) < 1e-300);
        assert_eq!(rational_to_f64(&q(-7, 4)), -1.75);
    }

    #[test]
    fn tracked_cancellation_is_zero() {
        let a = Tracked::new(Complex64::new(0.1, 0.0));
        let b = Tracked::new(Complex64::new(0.2, 0.0));
        let c = Tracked::new(Complex64::new(0.3, 0.0));
        assert!((a + b - c).is_zero());
        assert!(!(a + b).is_zero());
    }
}
