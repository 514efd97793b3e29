use std::fmt;

use super::SymError;
use crate::polycore::{gcd, qi, MPoly};
use crate::QPoly;

/// A homogeneous element `sum c_i dx^(r-i) dy^i` of the symmetric algebra,
/// stored as its coefficients `c_0..c_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymForm {
    coeffs: Vec<QPoly>,
    fiber: (String, String),
}

impl SymForm {
    /// Form with coefficients `c_0..c_r` in the fibers `dx, dy`.
    pub fn new(coeffs: Vec<QPoly>) -> Self {
        Self::with_fiber(coeffs, ("dx", "dy"))
    }

    pub fn with_fiber(mut coeffs: Vec<QPoly>, fiber: (&str, &str)) -> Self {
        if coeffs.is_empty() {
            coeffs.push(QPoly::zero());
        }
        SymForm {
            coeffs,
            fiber: (fiber.0.to_string(), fiber.1.to_string()),
        }
    }

    pub fn zero(r: usize) -> Self {
        Self::new(vec![QPoly::zero(); r + 1])
    }

    /// Degree-0 form.
    pub fn scalar(c: QPoly) -> Self {
        Self::new(vec![c])
    }

    /// `a dx + b dy`.
    pub fn linear(a: QPoly, b: QPoly) -> Self {
        Self::new(vec![a, b])
    }

    pub fn dx() -> Self {
        Self::linear(QPoly::one(), QPoly::zero())
    }

    pub fn dy() -> Self {
        Self::linear(QPoly::zero(), QPoly::one())
    }

    /// Fiber degree `r`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &QPoly {
        &self.coeffs[i]
    }

    pub fn fiber(&self) -> (&str, &str) {
        (&self.fiber.0, &self.fiber.1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn like(&self, coeffs: Vec<QPoly>) -> Self {
        SymForm {
            coeffs,
            fiber: self.fiber.clone(),
        }
    }

    /// The product `self ⊠ other`: fiber degrees add, coefficients convolve.
    pub fn box_product(&self, other: &SymForm) -> SymForm {
        let n = self.degree() + other.degree() + 1;
        let mut out = vec![QPoly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        self.like(out)
    }

    /// `self^⊠k`, with `self^⊠0 = 1`.
    pub fn box_pow(&self, k: u32) -> SymForm {
        let mut acc = self.like(vec![QPoly::one()]);
        for _ in 0..k {
            acc = acc.box_product(self);
        }
        acc
    }

    pub fn add(&self, other: &SymForm) -> SymForm {
        assert_eq!(self.degree(), other.degree(), "fiber degrees differ");
        self.like(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &SymForm) -> SymForm {
        assert_eq!(self.degree(), other.degree(), "fiber degrees differ");
        self.like(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Multiplies every coefficient by `h`.
    pub fn scale(&self, h: &QPoly) -> SymForm {
        self.like(self.coeffs.iter().map(|c| c * h).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&QPoly) -> QPoly) -> SymForm {
        self.like(self.coeffs.iter().map(f).collect())
    }

    /// Gcd of the coefficients (monic), zero for the zero form.
    pub fn content(&self) -> QPoly {
        self.coeffs
            .iter()
            .fold(QPoly::zero(), |acc, c| gcd(&acc, c))
    }

    /// The form as one polynomial in the base and fiber variables.
    pub fn to_poly(&self) -> QPoly {
        let r = self.degree() as u32;
        let dx = QPoly::var(&self.fiber.0);
        let dy = QPoly::var(&self.fiber.1);
        let mut acc = QPoly::zero().with_vars(&[&self.fiber.0, &self.fiber.1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = i as u32;
            let mono = &dx.pow(r - i) * &dy.pow(i);
            acc = &acc + &(c * &mono);
        }
        acc
    }

    /// Reads a polynomial homogeneous in the fiber variables back as a form.
    pub fn from_poly(p: &QPoly, fiber: (&str, &str)) -> Result<SymForm, SymError> {
        let not_homogeneous = || SymError::NotHomogeneous(fiber.0.into(), fiber.1.into());
        let ix = p.var_index(fiber.0);
        let iy = p.var_index(fiber.1);
        let base: Vec<String> = p
            .vars()
            .iter()
            .filter(|v| *v != fiber.0 && *v != fiber.1)
            .cloned()
            .collect();
        let exp = |m: &[u32], i: Option<usize>| i.map_or(0, |i| m[i]);
        let mut r = None;
        for (m, _) in p.terms() {
            let d = exp(m.exponents(), ix) + exp(m.exponents(), iy);
            match r {
                None => r = Some(d),
                Some(r0) if r0 != d => return Err(not_homogeneous()),
                _ => {}
            }
        }
        let r = r.unwrap_or(0) as usize;
        let mut parts: Vec<Vec<(Vec<u32>, _)>> = vec![Vec::new(); r + 1];
        for (m, c) in p.terms() {
            let e = m.exponents();
            let i = exp(e, iy) as usize;
            let rest: Vec<u32> = p
                .vars()
                .iter()
                .zip(e)
                .filter(|(v, _)| *v != fiber.0 && *v != fiber.1)
                .map(|(_, &k)| k)
                .collect();
            parts[i].push((rest, c.clone()));
        }
        let coeffs = parts
            .into_iter()
            .map(|t| MPoly::from_terms(&base, t))
            .collect();
        Ok(SymForm::with_fiber(coeffs, fiber))
    }

    /// Formal `∂/∂dx`, lowering the fiber degree by one.
    pub fn fiber_derivation(&self) -> Result<SymForm, SymError> {
        let r = self.degree();
        if r == 0 {
            return Err(SymError::DegreeZero);
        }
        Ok(self.like(
            (0..r)
                .map(|i| self.coeffs[i].scale(&qi((r - i) as i64)))
                .collect(),
        ))
    }

    /// Formal `∂/∂dy`.
    pub fn fiber_partial_dy(&self) -> Result<SymForm, SymError> {
        let r = self.degree();
        if r == 0 {
            return Err(SymError::DegreeZero);
        }
        Ok(self.like(
            (1..=r)
                .map(|i| self.coeffs[i].scale(&qi(i as i64)))
                .collect(),
        ))
    }

    /// Equal up to a nonzero rational scalar.
    pub fn is_associate(&self, other: &SymForm) -> bool {
        self.degree() == other.degree() && self.to_poly().is_associate(&other.to_poly())
    }

    /// Pairing with the tangent vector `(a, b)`: `sum c_i a^(r-i) b^i`.
    pub fn evaluate_on(&self, a: &QPoly, b: &QPoly) -> QPoly {
        let r = self.degree() as u32;
        let mut acc = QPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let i = i as u32;
            acc = &acc + &(&(c * &a.pow(r - i)) * &b.pow(i));
        }
        acc
    }
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
