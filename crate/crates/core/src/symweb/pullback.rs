use super::{SymError, SymForm};
use crate::QPoly;

/// Pulls `a` back along `(x, y) = (p, q)` where `p, q` are polynomials in
/// `src = (u, w)`. The result lives in the fibers `du, dw`.
pub fn pullback(
    map: (&QPoly, &QPoly),
    src: (&str, &str),
    a: &SymForm,
) -> Result<SymForm, SymError> {
    let (p, q) = map;
    let (u, w) = src;
    let (pu, pw, qu, qw) = (p.partial(u), p.partial(w), q.partial(u), q.partial(w));
    if (&(&pu * &qw) - &(&pw * &qu)).is_zero() {
        return Err(SymError::DegenerateMap);
    }
    let du = format!("d{u}");
    let dw = format!("d{w}");
    let fiber = (du.as_str(), dw.as_str());
    let dx = SymForm::with_fiber(vec![pu, pw], fiber);
    let dy = SymForm::with_fiber(vec![qu, qw], fiber);
    let r = a.degree();
    let subs = [("x", p.clone()), ("y", q.clone())];
    let mut out = SymForm::with_fiber(vec![QPoly::zero(); r + 1], fiber);
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.substitute_many(&subs);
        let term = dx
            .box_pow((r - i) as u32)
            .box_product(&dy.box_pow(i as u32))
            .scale(&c);
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::qi;

    fn v(n: &str) -> QPoly {
        QPoly::var(n)
    }

    #[test]
    fn chain_rule_examples() {
        let (u, w) = (v("u"), v("w"));
        let f = pullback((&u.pow(2), &w), ("u", "w"), &SymForm::dx()).unwrap();
        assert_eq!(f.coeffs(), &[u.scale(&qi(2)), QPoly::zero()]);
        assert_eq!(f.fiber(), ("du", "dw"));
        let dxdy = SymForm::dx().box_product(&SymForm::dy());
        let g = pullback((&(&u + &w), &(&u - &w)), ("u", "w"), &dxdy).unwrap();
        assert_eq!(
            g.coeffs(),
            &[QPoly::from_int(1), QPoly::zero(), QPoly::from_int(-1)]
        );
    }

    #[test]
    fn identity_map() {
        let a = SymForm::new(vec![v("x") * v("y"), v("y") - v("x"), QPoly::from_int(3)]);
        let b = pullback((&v("x"), &v("y")), ("x", "y"), &a).unwrap();
        assert_eq!(b.coeffs(), a.coeffs());
        assert_eq!(b.fiber(), ("dx", "dy"));
    }

    #[test]
    fn degenerate_map_rejected() {
        let u = v("u");
        assert_eq!(
            pullback((&u, &u.scale(&qi(2))), ("u", "w"), &SymForm::dx()),
            Err(SymError::DegenerateMap)
        );
    }
}
