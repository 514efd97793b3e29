//! Multivariate gcd by the recursive primitive PRS.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::upoly::{from_univariate, to_univariate};
use super::{exact_div, vars, MPoly, Monomial, PolyError, UPoly};
use crate::scalar::Exact;

fn monic<C: Exact>(p: MPoly<C>) -> MPoly<C> {
    if p.is_zero() {
        return p;
    }
    let lc = p.leading_coeff();
    p.scale(&(C::one() / lc))
}

/// Divides out the common scale so coefficients are coprime integers.
fn normalize<C: Exact>(p: &MPoly<C>) -> MPoly<C> {
    if p.is_zero() {
        return p.clone();
    }
    let s = C::common_scale(p.terms().map(|(_, c)| c));
    p.scale(&(C::one() / s))
}

fn divide<C: Exact>(p: &MPoly<C>, d: &MPoly<C>) -> MPoly<C> {
    exact_div(p, d)
        .expect("nonzero divisor")
        .expect("divisor must divide")
}

/// Greatest common divisor, scaled so the graded-lex leading coefficient is 1.
/// `gcd(0, 0) = 0`.
pub fn gcd<C: Exact>(p: &MPoly<C>, q: &MPoly<C>) -> MPoly<C> {
    let (a, b) = MPoly::aligned(p, q);
    let vars = a.vars().clone();
    monic(gcd_raw(&a, &b)).embed(&vars)
}

/// `p` as a univariate polynomial in `var` after fixing every other
/// variable at `point` (indexed like `p.vars()`).
fn specialize<C: Exact>(p: &MPoly<C>, var: &str, point: &[C]) -> UPoly<C> {
    let i = p.var_index(var).expect("variable present");
    let mut coeffs = vec![C::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (j, &e) in m.exponents().iter().enumerate() {
            if j != i {
                for _ in 0..e {
                    t = t * point[j].clone();
                }
            }
        }
        let k = m.exponents()[i] as usize;
        coeffs[k] = coeffs[k].clone() + t;
    }
    UPoly::new(coeffs)
}

/// Sound coprimality test: a common factor of positive degree in `v`
/// survives any specialization of the other variables that keeps the degree
/// of `p` in `v`, so constant univariate gcds for every shared `v` prove the
/// gcd is constant. `false` means "not proven".
fn provably_coprime<C: Exact>(p: &MPoly<C>, q: &MPoly<C>) -> bool {
    let n = p.vars().len();
    for v in p.used_vars() {
        if !q.involves(&v) {
            continue;
        }
        let (dp, dq) = (p.degree_in(&v) as usize, q.degree_in(&v) as usize);
        let mut proven = false;
        for attempt in 0..3i64 {
            let point: Vec<C> = (0..n as i64)
                .map(|j| C::from_i64((2 + 3 * j + 7 * attempt) * if j % 2 == 0 { 1 } else { -1 }))
                .collect();
            let sp = specialize(p, &v, &point);
            let sq = specialize(q, &v, &point);
            if sp.degree() != Some(dp) || sq.degree() != Some(dq) {
                continue;
            }
            if sp.gcd(&sq).degree() == Some(0) {
                proven = true;
            }
            break;
        }
        if !proven {
            return false;
        }
    }
    true
}

fn max_norm<C: Exact>(p: &MPoly<C>) -> BigInt {
    p.terms()
        .map(|(_, c)| c.to_rational().numer().abs())
        .max()
        .unwrap_or_default()
}

fn as_scalar<C: Exact>(n: BigInt) -> C {
    C::from_rational(BigRational::from_integer(n))
}

/// `p` with `var` fixed at the integer `xi`, on the same variable list.
fn eval_at<C: Exact>(p: &MPoly<C>, var: &str, xi: &BigInt) -> MPoly<C> {
    let i = p.var_index(var).expect("variable present");
    let mut out = MPoly::zero_in(p.vars());
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let k = std::mem::take(&mut e[i]);
        out.push_term(Monomial(e), c.clone() * as_scalar(xi.pow(k)));
    }
    out
}

/// Reads each integer coefficient of `h` in balanced base `xi` as a
/// polynomial in `var`.
fn interpolate<C: Exact>(h: &MPoly<C>, var: &str, xi: &BigInt) -> MPoly<C> {
    let i = h.var_index(var).expect("variable present");
    let half = xi >> 1;
    let mut out = MPoly::zero_in(h.vars());
    for (m, c) in h.terms() {
        let mut n = c.to_rational().to_integer();
        let mut k = 0;
        while !n.is_zero() {
            let mut d = n.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            n = (&n - &d) / xi;
            if !d.is_zero() {
                let mut e = m.exponents().to_vec();
                e[i] = k;
                out.push_term(Monomial(e), as_scalar(d));
            }
            k += 1;
        }
    }
    out
}

/// Heuristic gcd: evaluate `var` at a large integer, take the gcd of the
/// images, read it back in base `xi`, and keep it only if it divides both
/// inputs. Inputs are integer-primitive and both involve `var`.
fn heuristic_gcd<C: Exact>(f: &MPoly<C>, g: &MPoly<C>, var: &str) -> Option<MPoly<C>> {
    let nf = max_norm(f);
    let ng = max_norm(g);
    let mut xi: BigInt = 2 * nf.min(ng) + 29;
    for _ in 0..6 {
        let ff = eval_at(f, var, &xi);
        let gg = eval_at(g, var, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let cf = C::common_scale(ff.terms().map(|(_, c)| c))
                .to_rational()
                .to_integer();
            let cg = C::common_scale(gg.terms().map(|(_, c)| c))
                .to_rational()
                .to_integer();
            let h = gcd_raw(&ff, &gg).scale(&as_scalar(cf.gcd(&cg)));
            let cand = normalize(&interpolate(&h, var, &xi));
            if !cand.is_zero()
                && exact_div(f, &cand).expect("nonzero").is_some()
                && exact_div(g, &cand).expect("nonzero").is_some()
            {
                return Some(cand);
            }
        }
        xi = &xi * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

/// A variable occurring in both inputs with the smallest degree, or failing
/// that the first variable occurring in either.
fn main_var<C: Exact>(p: &MPoly<C>, q: &MPoly<C>) -> String {
    let pv = p.used_vars();
    let qv = q.used_vars();
    let shared = pv.iter().filter(|v| qv.contains(v)).min_by(|a, b| {
        let da = p.degree_in(a).max(q.degree_in(a));
        let db = p.degree_in(b).max(q.degree_in(b));
        da.cmp(&db).then_with(|| vars::cmp_vars(a, b))
    });
    if let Some(v) = shared {
        return v.clone();
    }
    pv.into_iter()
        .chain(qv)
        .min_by(|a, b| vars::cmp_vars(a, b))
        .expect("non-constant input")
}

fn gcd_raw<C: Exact>(p: &MPoly<C>, q: &MPoly<C>) -> MPoly<C> {
    if p.is_zero() {
        return normalize(q);
    }
    if q.is_zero() {
        return normalize(p);
    }
    let (p, q) = (&normalize(p), &normalize(q));
    if p.is_constant() || q.is_constant() {
        return MPoly::constant_in(C::one(), p.vars());
    }
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    if small.total_degree() <= large.total_degree()
        && exact_div(large, small).expect("nonzero").is_some()
    {
        return small.clone();
    }
    if provably_coprime(p, q) {
        return MPoly::constant_in(C::one(), p.vars());
    }
    let v = main_var(p, q);
    if p.involves(&v) && q.involves(&v) {
        if let Some(h) = heuristic_gcd(p, q, &v) {
            return h;
        }
    }
    match (p.involves(&v), q.involves(&v)) {
        (true, false) => gcd_raw(&content_raw(p, &v), q),
        (false, true) => gcd_raw(p, &content_raw(q, &v)),
        _ => {
            let cp = content_raw(p, &v);
            let cq = content_raw(q, &v);
            let pp = divide(p, &cp);
            let pq = divide(q, &cq);
            let c = gcd_raw(&cp, &cq);
            let g = prs(&pp, &pq, &v);
            &c * &g
        }
    }
}

fn content_raw<C: Exact>(p: &MPoly<C>, var: &str) -> MPoly<C> {
    let u = to_univariate(p, var);
    let mut acc = MPoly::zero_in(p.vars());
    for c in u.coeffs() {
        if c.is_zero() {
            continue;
        }
        acc = gcd_raw(&acc, c);
        if acc.is_constant() {
            return MPoly::constant_in(C::one(), p.vars());
        }
    }
    acc
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in<C: Exact>(p: &MPoly<C>, var: &str) -> MPoly<C> {
    monic(content_raw(p, var))
}

/// `p` divided by its content in `var`.
pub fn primitive_part_in<C: Exact>(p: &MPoly<C>, var: &str) -> MPoly<C> {
    if p.is_zero() {
        return p.clone();
    }
    divide(p, &content_raw(p, var))
}

/// Pseudo-remainder of `a` by `b` in `var`.
fn prem<C: Exact>(a: &UPoly<MPoly<C>>, b: &UPoly<MPoly<C>>) -> UPoly<MPoly<C>> {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().unwrap().clone();
    let mut r: Vec<MPoly<C>> = a.coeffs().to_vec();
    let Some(da) = a.degree().filter(|&d| d >= db) else {
        return a.clone();
    };
    // Exactly deg a - deg b + 1 multiplications by lc(b), as the
    // subresultant divisions require.
    for j in (db..=da).rev() {
        let lr = r[j].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        if !lr.is_zero() {
            for (i, bc) in b.coeffs().iter().enumerate() {
                r[j - db + i] = &r[j - db + i] - &(&lr * bc);
            }
        }
        r.truncate(j);
    }
    UPoly::new(r)
}

/// Subresultant PRS on primitive inputs; returns the primitive part of the
/// last nonzero remainder.
fn prs<C: Exact>(a: &MPoly<C>, b: &MPoly<C>, var: &str) -> MPoly<C> {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let vars = vars::merge(a.vars(), b.vars());
    let one = MPoly::constant_in(C::one(), &vars);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = prem(&to_univariate(&a, var), &to_univariate(&b, var));
        if r.is_zero() {
            return primitive_part_in(&b, var);
        }
        if r.degree() == Some(0) {
            return one;
        }
        let r = from_univariate(&r, var).embed(&vars);
        a = b;
        b = divide(&r, &(&g * &h.pow(delta)));
        g = to_univariate(&a, var).leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            divide(&g.pow(delta), &h.pow(delta - 1))
        };
    }
}

/// Strips repeated factors involving `var` and any content in `var`.
pub fn squarefree_part<C: Exact>(p: &MPoly<C>, var: &str) -> Result<MPoly<C>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !p.involves(var) {
        return Ok(MPoly::constant_in(C::one(), p.vars()));
    }
    let g = gcd(p, &p.partial(var));
    let s = divide(p, &g);
    Ok(monic(primitive_part_in(&s, var)))
}

/// Product of the distinct irreducible factors of `p`, monic; `1` for
/// nonzero constants.
pub fn radical<C: Exact>(p: &MPoly<C>) -> Result<MPoly<C>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let Some(v) = p
        .used_vars()
        .into_iter()
        .min_by(|a, b| vars::cmp_vars(a, b))
    else {
        return Ok(MPoly::constant_in(C::one(), p.vars()));
    };
    let c = content_raw(p, &v);
    let part = squarefree_part(p, &v)?;
    Ok(monic(&part * &radical(&c)?))
}
