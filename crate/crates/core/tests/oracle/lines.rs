//! Exhaustive search for invariant lines with rational coefficients.
//!
//! Every invariant line divides `f δg - g δf`, so its slope is a root of
//! the top form and its intercept a root of a restriction. Candidates are
//! enumerated as ±p/q with p and q running over divisors of the end
//! coefficients, then each line is checked by restricting `δL` to it.

use dweb::dvariety::VectorField;
use dweb::polycore::{exact_div, qi};
use dweb::{QPoly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn derive(v: &VectorField, p: &QPoly) -> QPoly {
    &(v.f() * &p.partial("x")) + &(v.g() * &p.partial("y"))
}

fn extactic(v: &VectorField) -> QPoly {
    &(v.f() * &derive(v, v.g())) - &(v.g() * &derive(v, v.f()))
}

/// Integer coefficients, constant term first, of a polynomial in `var`.
fn int_coeffs(p: &QPoly, var: &str) -> Vec<BigInt> {
    let deg = p.degree_in(var) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    let idx = p.var_index(var);
    for (m, a) in p.terms() {
        let e = idx.map_or(0, |i| m.exponents()[i] as usize);
        c[e] = &c[e] + a;
    }
    let l = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    c.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u128().expect("coefficient fits in u128");
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
    }
    out
}

/// Rational roots by the divisor test, or `None` for the zero polynomial.
fn roots(mut c: Vec<BigInt>) -> Option<Vec<Rational>> {
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut out = Vec::new();
    let low = c.iter().position(|a| !a.is_zero()).unwrap();
    if low > 0 {
        out.push(Rational::zero());
        c.drain(..low);
    }
    let (a0, an) = (c[0].clone(), c[c.len() - 1].clone());
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for s in [p.clone(), -p.clone()] {
                let r = Rational::new(s, q.clone());
                let val = c.iter().rev().fold(Rational::zero(), |acc, a| {
                    acc * &r + Rational::from(a.clone())
                });
                if val.is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    Some(out)
}

fn at(p: &QPoly, subs: &[(&str, QPoly)]) -> QPoly {
    p.substitute_many(subs)
}

/// Every invariant line as `(curve, cofactor)`, curve in canonical form,
/// sorted by text. `None` when the extactic vanishes identically.
pub fn invariant_lines(v: &VectorField) -> Option<Vec<(QPoly, QPoly)>> {
    let e = extactic(v);
    if e.is_zero() {
        return None;
    }
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let bound = e.total_degree() as i64 + 1;
    let mut lines = Vec::new();

    // Vertical lines x = c: roots of E(x, y0) for any y0 where it is nonzero.
    let vertical = (0..=bound)
        .find_map(|y0| roots(int_coeffs(&at(&e, &[("y", QPoly::constant(qi(y0)))]), "x")))
        .expect("nonzero restriction");
    for c in vertical {
        lines.push(&x - &QPoly::constant(c));
    }

    // y = m x + c: m is a root of the top form at (1, m).
    let d = e.total_degree();
    let top = QPoly::from_terms(
        &["x", "y"],
        e.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| {
            let ex = e.var_index("x").map_or(0, |i| m.exponents()[i]);
            let ey = e.var_index("y").map_or(0, |i| m.exponents()[i]);
            (vec![ex, ey], c.clone())
        }),
    );
    let slopes = roots(int_coeffs(
        &at(&top, &[("x", QPoly::one()), ("y", QPoly::var("y"))]),
        "y",
    ))
    .expect("nonzero top form");
    for m in slopes {
        let mq = QPoly::constant(m.clone());
        let intercepts = (0..=bound)
            .find_map(|x0| {
                let x0 = QPoly::constant(qi(x0));
                let yv = &(&mq * &x0) + &QPoly::var("y");
                roots(int_coeffs(&at(&e, &[("x", x0), ("y", yv)]), "y"))
            })
            .expect("nonzero restriction");
        for c in intercepts {
            lines.push(&(&y - &(&mq * &x)) - &QPoly::constant(c));
        }
    }

    let mut out: Vec<(QPoly, QPoly)> = Vec::new();
    for l in lines {
        let dl = derive(v, &l);
        // δL restricted to L = 0.
        let restricted = if l.involves("y") {
            let yv = &y - &l;
            at(&dl, &[("y", yv)])
        } else {
            let xv = &x - &l;
            at(&dl, &[("x", xv)])
        };
        if !restricted.is_zero() {
            continue;
        }
        let k = exact_div(&dl, &l)
            .unwrap()
            .expect("line divides its derivative");
        let l = l.canonical();
        if !out.iter().any(|(c, _)| *c == l) {
            out.push((l, k));
        }
    }
    out.sort_by_cached_key(|(c, _)| c.to_string());
    Some(out)
}
