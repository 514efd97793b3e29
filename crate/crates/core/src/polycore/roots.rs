//! Rational roots of univariate rational polynomials.
//!
//! A rational root of an integer polynomial with leading coefficient `L` has
//! the form `k / L`. Real roots are isolated with Sturm sequences and refined
//! by bisection until each isolating interval is narrower than `1 / L`; the
//! one candidate multiple of `1 / L` left in it is then tested exactly. No
//! integer factorisation is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Rational, UPoly};

/// Rational roots with multiplicities, plus the degree not accounted for by
/// them (irrational or non-real roots).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, usize)>,
    pub residual_degree: usize,
}

/// Yun's squarefree decomposition: `p = lc * prod f_i^i` with the `f_i`
/// monic, squarefree and pairwise coprime. Entry `i - 1` holds `f_i`.
pub fn squarefree_decomposition(p: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    loop {
        let a = b.gcd(&d);
        out.push(a.clone());
        b = b.div_rem(&a).0;
        if b.degree() == Some(0) {
            break;
        }
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
    }
    while out.last().is_some_and(|f| f.degree() == Some(0)) {
        out.pop();
    }
    out
}

fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_sequence(p: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Scale to keep coefficients small; only signs matter.
        let r = r.scale(&(-Rational::one())).monic_positive();
        seq.push(r);
    }
    seq
}

impl UPoly<Rational> {
    /// Positive multiple with leading coefficient 1 (sign preserved).
    fn monic_positive(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.abs().recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with no common factor.
    pub fn integer_primitive(&self) -> Vec<BigInt> {
        let l = self
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|n| n / &g).collect()
    }
}

fn variations(seq: &[UPoly<Rational>], t: &Rational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in seq {
        let s = sign(&p.eval(t));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Cauchy bound on the moduli of the roots.
fn root_bound(p: &UPoly<Rational>) -> Rational {
    let lc = p.leading().unwrap().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Rational roots of a squarefree polynomial.
fn squarefree_rational_roots(p: &UPoly<Rational>) -> Vec<Rational> {
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    if deg == 1 {
        let c = p.coeffs();
        return vec![-(&c[0]) / &c[1]];
    }
    let ints = p.integer_primitive();
    let lead = ints.last().unwrap().abs();
    let unit = BigRational::new(BigInt::one(), lead.clone());
    let seq = sturm_sequence(p);
    let bound = root_bound(p);
    let mut roots = Vec::new();
    // Intervals (a, b] with a known root count.
    let lo = -bound.clone();
    let hi = bound;
    let total = variations(&seq, &lo) - variations(&seq, &hi);
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n > 1 {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            let vm = variations(&seq, &mid);
            let left = variations(&seq, &a) - vm;
            stack.push((a, mid.clone(), left));
            stack.push((mid, b, n - left));
            continue;
        }
        // Exactly one root in (a, b]: refine until narrower than 1/L.
        let (mut a, mut b) = (a, b);
        let mut found = None;
        if p.eval(&b).is_zero() {
            found = Some(b.clone());
        }
        while found.is_none() && &b - &a >= unit {
            let mid = (&a + &b) / Rational::from_integer(2.into());
            let fm = p.eval(&mid);
            if fm.is_zero() {
                found = Some(mid);
                break;
            }
            // f(b) != 0 throughout; the single root sits on the sign change.
            if sign(&fm) == sign(&p.eval(&b)) {
                b = mid;
            } else {
                a = mid;
            }
        }
        match found {
            Some(r) => roots.push(r),
            None => {
                // Multiples of 1/L inside (a, b]: at most one.
                let k = (&b * Rational::from_integer(lead.clone())).floor();
                let cand = k / Rational::from_integer(lead.clone());
                if cand > a && cand <= b && p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// All rational roots of a nonzero polynomial, with multiplicities.
pub fn rational_roots(u: &UPoly<Rational>) -> RationalRoots {
    let degree = u.degree().unwrap_or(0);
    let mut roots = Vec::new();
    for (i, f) in squarefree_decomposition(u).iter().enumerate() {
        for r in squarefree_rational_roots(f) {
            roots.push((r, i + 1));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    RationalRoots {
        roots,
        residual_degree: degree - found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{q, qi};

    fn up(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_ints(c)
    }

    #[test]
    fn roots_with_multiplicity() {
        // t^2 (t - 1) = t^3 - t^2
        let r = rational_roots(&up(&[0, 0, -1, 1]));
        assert_eq!(r.roots, vec![(qi(0), 2), (qi(1), 1)]);
        assert_eq!(r.residual_degree, 0);
    }

    #[test]
    fn no_rational_roots() {
        let r = rational_roots(&up(&[1, 0, 1]));
        assert!(r.roots.is_empty());
        assert_eq!(r.residual_degree, 2);
        let r = rational_roots(&up(&[-2, 0, 1]));
        assert!(r.roots.is_empty());
        assert_eq!(r.residual_degree, 2);
    }

    #[test]
    fn fractional_root() {
        let r = rational_roots(&up(&[-3, 2]));
        assert_eq!(r.roots, vec![(q(3, 2), 1)]);
    }

    #[test]
    fn large_denominator_roots() {
        // (97 t - 13)(89 t + 1000)(t^2 - 3)
        let p = up(&[-13, 97]).mul(&up(&[1000, 89])).mul(&up(&[-3, 0, 1]));
        let r = rational_roots(&p);
        assert_eq!(r.roots, vec![(q(-1000, 89), 1), (q(13, 97), 1)]);
        assert_eq!(r.residual_degree, 2);
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^3 (t+2) t^2
        let p = up(&[-1, 1])
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-1, 1]))
            .mul(&up(&[2, 1]))
            .mul(&up(&[0, 0, 1]));
        let sq = squarefree_decomposition(&p);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq[0], up(&[2, 1]));
        assert_eq!(sq[1], up(&[0, 0, 1]).div_rem(&up(&[0, 1])).0);
        assert_eq!(sq[2], up(&[-1, 1]));
    }
}
