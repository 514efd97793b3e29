//! Sylvester resultants with fraction-free (Bareiss) determinants.

use super::upoly::to_univariate;
use super::{exact_div, vars, MPoly, PolyError};
use crate::scalar::Exact;

/// Determinant of a square matrix of polynomials by Bareiss elimination.
/// Every division is exact; an empty matrix has determinant 1.
pub fn bareiss_det<C: Exact>(mut m: Vec<Vec<MPoly<C>>>) -> MPoly<C> {
    let n = m.len();
    let mut target = vars::var_list::<&str>(&[]);
    for row in &m {
        for e in row {
            target = vars::merge(&target, e.vars());
        }
    }
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = e.embed(&target);
        }
    }
    if n == 0 {
        return MPoly::constant_in(C::one(), &target);
    }
    let mut sign_flip = false;
    let mut prev = MPoly::constant_in(C::one(), &target);
    for k in 0..n - 1 {
        // Prefer the sparsest nonzero pivot.
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| (m[i][k].total_degree(), m[i][k].len()));
        let Some(p) = pivot else {
            return MPoly::zero_in(&target);
        };
        if p != k {
            m.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if num.is_zero() {
                    num
                } else {
                    exact_div(&num, &prev)
                        .expect("nonzero previous pivot")
                        .expect("Bareiss division is exact")
                };
            }
            m[i][k] = MPoly::zero_in(&target);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Determinant of the Sylvester matrix of two coefficient sequences given in
/// descending order. The formal degrees are `a.len() - 1` and `b.len() - 1`,
/// so leading zeros are kept: this is the resultant of binary forms.
pub fn sylvester_det<C: Exact>(a: &[MPoly<C>], b: &[MPoly<C>]) -> MPoly<C> {
    let m = a.len().saturating_sub(1);
    let n = b.len().saturating_sub(1);
    let size = m + n;
    let mut target = vars::var_list::<&str>(&[]);
    for e in a.iter().chain(b) {
        target = vars::merge(&target, e.vars());
    }
    let zero = MPoly::zero_in(&target);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in a.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in b.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Resultant of `p` and `q` with respect to `var`.
///
/// Degrees are the actual degrees in `var` (leading zeros trimmed), so the
/// value is the resultant of the trimmed pair. It vanishes at a point of the
/// remaining variables whenever `p` and `q` share a root in `var` there; it
/// also vanishes where both leading coefficients do.
pub fn resultant<C: Exact>(p: &MPoly<C>, q: &MPoly<C>, var: &str) -> Result<MPoly<C>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !p.involves(var) && !q.involves(var) {
        return Err(PolyError::BothConstant(var.to_string()));
    }
    let (p, q) = MPoly::aligned(p, q);
    let desc = |x: &MPoly<C>| -> Vec<MPoly<C>> {
        let mut c = to_univariate(x, var).into_coeffs();
        c.reverse();
        c
    };
    let res = sylvester_det(&desc(&p), &desc(&q));
    Ok(res.embed(&vars::merge(res.vars(), p.vars())))
}

/// A nonzero polynomial free of `var` vanishing on the projection of the
/// common zeros of `polys`, from the resultant of one member against a
/// generic combination of the others. `None` when no such polynomial is
/// found (for instance when the polynomials share a factor involving `var`).
pub fn eliminant<C: Exact>(polys: &[MPoly<C>], var: &str) -> Option<MPoly<C>> {
    let nonzero: Vec<&MPoly<C>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    if let Some(c) = nonzero.iter().find(|p| p.is_constant()) {
        return Some((*c).clone());
    }
    let involving: Vec<&&MPoly<C>> = nonzero.iter().filter(|p| p.involves(var)).collect();
    let Some(&&a) = involving.iter().min_by_key(|p| (p.degree_in(var), p.len())) else {
        // Nothing depends on `var`: the gcd already cuts out the projection.
        return Some(nonzero.iter().fold(MPoly::zero(), |g, p| super::gcd(&g, p)));
    };
    let rest: Vec<&MPoly<C>> = nonzero
        .iter()
        .copied()
        .filter(|p| !std::ptr::eq(*p, a))
        .collect();
    if rest.is_empty() {
        return None;
    }
    for lambda in 1..=(a.degree_in(var) as i64 + 3) {
        let mut b = MPoly::zero();
        let mut w = C::one();
        for p in &rest {
            b = &b + &p.scale(&w);
            w = w * C::from_i64(lambda);
        }
        if b.is_zero() {
            continue;
        }
        let r = resultant(a, &b, var).ok()?;
        if !r.is_zero() {
            return Some(r);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{qi, Rational};
    use num_traits::Zero;

    fn v(n: &str) -> MPoly<Rational> {
        MPoly::var(n)
    }
    fn c(n: i64) -> MPoly<Rational> {
        MPoly::constant(qi(n))
    }

    #[test]
    fn resultant_examples() {
        let (t, x, y) = (v("t"), v("x"), v("y"));
        let r = resultant(&(&t * &t + &c(1)), &(&t - &x), "t").unwrap();
        assert_eq!(r, &x * &x + &c(1));
        assert!(resultant(&t, &t, "t").unwrap().is_zero());
        let r = resultant(&(&x * &x - &y), &(&x - &y), "x").unwrap();
        assert_eq!(r, &y * &y - &y);
    }

    #[test]
    fn both_constant_is_an_error() {
        assert_eq!(
            resultant(&v("x"), &v("y"), "t"),
            Err(PolyError::BothConstant("t".into()))
        );
    }

    #[test]
    fn constant_in_var_gives_power() {
        // Res_t(t^2 + 1, x) = x^2
        let r = resultant(&(&v("t") * &v("t") + &c(1)), &v("x"), "t").unwrap();
        assert_eq!(r, v("x").pow(2));
    }

    #[test]
    fn eliminant_projects_common_zeros() {
        let (x, y) = (v("x"), v("y"));
        // y(y+1), (y+1)(y+x), (y+x)y share no common factor but are
        // pairwise dependent; the combination still eliminates.
        let p = [
            &y * &(&y + &c(1)),
            &(&y + &c(1)) * &(&y + &x),
            &(&y + &x) * &y,
        ];
        let e = eliminant(&p, "y").unwrap();
        assert!(!e.is_zero() && !e.involves("y"));
        assert!(e.eval_named(&[("x", qi(0))], |q| q.clone()).is_zero());
        assert_eq!(eliminant(&[&x * &y, &y * &(&x + &c(1))], "y"), None);
    }

    #[test]
    fn determinant_3x3() {
        let m = vec![
            vec![c(2), c(0), c(1)],
            vec![c(1), c(3), c(2)],
            vec![c(1), c(1), c(1)],
        ];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(bareiss_det(m).is_zero());
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(bareiss_det(m), c(-1));
    }
}
