use std::fmt;

use num_traits::Zero;

use super::{vars, MPoly, Monomial};
use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient type is either a [`Scalar`] or an [`MPoly`] (the view of a
/// multivariate polynomial in one distinguished variable).
#[derive(Clone, PartialEq)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }
}

impl<T: fmt::Debug> fmt::Debug for UPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.coeffs)
    }
}

impl<C: Scalar> UPoly<C> {
    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&n| C::from_i64(n)).collect())
    }

    pub fn eval(&self, t: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &C) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1].clone() / lc.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - f.clone() * c.clone();
            }
            quot[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = C::one() / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Monic gcd by the Euclidean algorithm; exact for exact coefficients.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Reads a multivariate polynomial in which only `var` occurs.
    pub fn from_mpoly(p: &MPoly<C>, var: &str) -> Option<Self> {
        if p.used_vars().iter().any(|v| v != var) {
            return None;
        }
        let mut coeffs = vec![C::zero(); p.degree_in(var) as usize + 1];
        let idx = p.var_index(var);
        for (m, c) in p.terms() {
            let k = idx.map_or(0, |i| m.exponents()[i] as usize);
            coeffs[k] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn to_mpoly(&self, var: &str) -> MPoly<C> {
        MPoly::from_terms(
            &[var],
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }
}

/// Views `p` as a polynomial in `var` whose coefficients are polynomials in
/// the remaining variables (same variable list, zero exponent in `var`).
pub fn to_univariate<C: Scalar>(p: &MPoly<C>, var: &str) -> UPoly<MPoly<C>> {
    let Some(i) = p.var_index(var) else {
        return UPoly::new(vec![p.clone()]);
    };
    let deg = p.degree_in(var) as usize;
    let mut coeffs = vec![MPoly::zero_in(p.vars()); deg + 1];
    for (m, c) in p.terms() {
        let k = m.exponents()[i] as usize;
        let mut e = m.exponents().to_vec();
        e[i] = 0;
        coeffs[k].push_term(Monomial(e), c.clone());
    }
    UPoly::new(coeffs)
}

pub fn from_univariate<C: Scalar>(u: &UPoly<MPoly<C>>, var: &str) -> MPoly<C> {
    let mut out = MPoly::zero();
    let x = MPoly::<C>::var(var);
    let mut power = MPoly::<C>::one();
    for (k, c) in u.coeffs().iter().enumerate() {
        if k > 0 {
            power = &power * &x;
        }
        if !c.is_zero() {
            out = &out + &(c * &power);
        }
    }
    if out.vars().is_empty() {
        if let Some(c) = u.coeffs().first() {
            return MPoly::zero_in(&vars::merge(c.vars(), &vars::var_list(&[var])));
        }
    }
    out
}
