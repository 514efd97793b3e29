use dweb::polycore::{exact_div, gcd, qi, resultant, Rational};
use dweb::QPoly;
use proptest::prelude::*;

fn poly_in(
    names: &'static [&'static str],
    max_exp: u32,
    max_terms: usize,
) -> impl Strategy<Value = QPoly> {
    let n = names.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| QPoly::from_terms(names, terms.into_iter().map(|(e, c)| (e, qi(c)))))
}

fn xy() -> impl Strategy<Value = QPoly> {
    poly_in(&["x", "y"], 2, 4)
}

fn nonzero_xy() -> impl Strategy<Value = QPoly> {
    xy().prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials in t, x with positive degree in t.
fn in_t() -> impl Strategy<Value = QPoly> {
    (
        poly_in(&["t", "x"], 2, 3),
        1u32..=2,
        prop_oneof![Just(-1i64), Just(1), Just(2)],
    )
        .prop_map(|(p, d, c)| &p + &QPoly::var("t").pow(d).scale(&qi(c)))
        .prop_filter("involves t", |p| p.involves("t"))
}

fn assoc(a: &QPoly, b: &QPoly) -> bool {
    a.is_associate(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(a in xy(), b in xy(), c in xy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_div_inverts_mul(p in xy(), q in nonzero_xy()) {
        let prod = &p * &q;
        prop_assert_eq!(exact_div(&prod, &q).unwrap(), Some(p));
    }

    #[test]
    fn leibniz(p in xy(), q in xy()) {
        for v in ["x", "y"] {
            let lhs = (&p * &q).partial(v);
            let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gcd_divides_both(p in nonzero_xy(), q in nonzero_xy(), r in nonzero_xy()) {
        let g = gcd(&p, &q);
        prop_assert!(exact_div(&p, &g).unwrap().is_some());
        prop_assert!(exact_div(&q, &g).unwrap().is_some());
        let gr = gcd(&(&p * &r), &(&q * &r));
        prop_assert!(assoc(&gr, &(&r * &g)), "gcd(pr, qr) = {gr}, r gcd(p, q) = {}", &r * &g);
    }

    #[test]
    fn resultant_is_multiplicative(
        p in in_t(),
        q in in_t(),
        r in in_t(),
    ) {
        let lhs = resultant(&(&p * &q), &r, "t").unwrap();
        let rhs = &resultant(&p, &r, "t").unwrap() * &resultant(&q, &r, "t").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_on_common_root(a in -3i64..=3, p in poly_in(&["t", "x"], 2, 3), q in poly_in(&["t", "x"], 2, 3)) {
        // Both share the factor (t - a x).
        let lin = &QPoly::var("t") - &QPoly::var("x").scale(&Rational::from_integer(a.into()));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let r = resultant(&(&p * &lin), &(&q * &lin), "t").unwrap();
        prop_assert!(r.is_zero());
    }
}
