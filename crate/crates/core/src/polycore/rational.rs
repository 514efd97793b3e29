use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MPoly;

pub type Rational = BigRational;

pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly<Rational> {
    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators after clearing denominators.
    pub fn integer_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let l = self.denominator_lcm();
        let g = self.terms().fold(BigInt::zero(), |acc, (_, c)| {
            let n = c.numer() * (&l / c.denom());
            acc.gcd(&n)
        });
        BigRational::new(g, l)
    }

    /// The associate with coprime integer coefficients and positive leading
    /// coefficient in graded-lex order. Zero maps to zero.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.integer_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Equality up to a nonzero rational scalar.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Scales so that the graded-lex leading coefficient is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Coefficients are all integers.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }
}

/// Best rational approximation with denominator at most `max_den`, accepted
/// only when it lies within `tol` (relative) of `x`.
pub fn rational_reconstruct(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    // Continued-fraction convergents.
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_clears_denominators() {
        let p = MPoly::from_terms(&["x", "y"], [(vec![1, 0], q(-1, 2)), (vec![0, 0], q(3, 4))]);
        let c = p.canonical();
        assert_eq!(
            c,
            MPoly::from_terms(&["x"], [(vec![1], qi(2)), (vec![0], qi(-3))])
        );
        assert!(p.is_associate(&c));
    }

    #[test]
    fn reconstruct_simple_fractions() {
        assert_eq!(rational_reconstruct(1.5, 100, 1e-12), Some(q(3, 2)));
        assert_eq!(
            rational_reconstruct(-0.333333333333333, 100, 1e-12),
            Some(q(-1, 3))
        );
        assert_eq!(rational_reconstruct(std::f64::consts::PI, 100, 1e-12), None);
    }
}
