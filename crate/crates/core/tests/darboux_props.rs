mod oracle {
    pub mod lines;
}

use dweb::darboux::{
    extactic1, invariant_curves_deg2, linear_invariant_curves, DarbouxCert, DEFAULT_BUDGET,
};
use dweb::dvariety::{apply_derivation, is_invariant_curve, VectorField};
use dweb::polycore::{exact_div, qi};
use dweb::QPoly;
use oracle::lines::invariant_lines;
use proptest::prelude::*;

fn poly(deg: u32, range: i64) -> impl Strategy<Value = QPoly> {
    let monos: Vec<(u32, u32)> = (0..=deg)
        .flat_map(|d| (0..=d).map(move |j| (d - j, j)))
        .collect();
    prop::collection::vec(-range..=range, monos.len()).prop_map(move |cs| {
        QPoly::from_terms(
            &["x", "y"],
            monos.iter().zip(cs).map(|(&(a, b), c)| (vec![a, b], qi(c))),
        )
    })
}

fn field(deg: u32, range: i64) -> impl Strategy<Value = VectorField> {
    (poly(deg, range), poly(deg, range))
        .prop_filter_map("nonzero field", |(f, g)| VectorField::new(f, g).ok())
}

/// A field leaving `L = a x + b y + c` invariant: `f = L A + b B`,
/// `g = L C - a B`, so that `δL = L (a A + b C)`.
fn planted() -> impl Strategy<Value = (VectorField, QPoly)> {
    (
        (-3i64..=3, -3i64..=3, -3i64..=3),
        poly(1, 3),
        poly(2, 3),
        poly(1, 3),
    )
        .prop_filter("a line", |((a, b, _), ..)| (*a, *b) != (0, 0))
        .prop_filter_map("nonzero field", |((a, b, c), pa, pb, pc)| {
            let l = QPoly::from_terms(
                &["x", "y"],
                [
                    (vec![1, 0], qi(a)),
                    (vec![0, 1], qi(b)),
                    (vec![0, 0], qi(c)),
                ],
            );
            let f = &(&l * &pa) + &pb.scale(&qi(b));
            let g = &(&l * &pc) - &pb.scale(&qi(a));
            VectorField::new(f, g).ok().map(|v| (v, l))
        })
}

fn summary(certs: &[DarbouxCert]) -> Vec<(String, String)> {
    certs
        .iter()
        .map(|c| (c.curve().to_string(), c.cofactor().to_string()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn planted_lines_are_found_and_certified((v, l) in planted()) {
        let s = linear_invariant_curves(&v);
        prop_assume!(!s.degenerate);
        prop_assert!(s.complete);
        prop_assert!(s.curves.iter().any(|c| *c.curve() == l.canonical()));
        let e = extactic1(&v);
        for c in &s.curves {
            prop_assert!(c.recheck(&v));
            prop_assert!(is_invariant_curve(&v, c.curve()).unwrap().is_some());
            prop_assert_eq!(c.degree(), 1);
            prop_assert!(c.cofactor().total_degree() < v.degree().max(1));
            prop_assert!(exact_div(&e, c.curve()).unwrap().is_some());
        }
    }

    #[test]
    fn products_carry_summed_cofactors((v, _) in planted()) {
        let s = linear_invariant_curves(&v);
        for (i, a) in s.curves.iter().enumerate() {
            for b in &s.curves[i + 1..] {
                let p = a.curve() * b.curve();
                let k = a.cofactor() + b.cofactor();
                prop_assert_eq!(apply_derivation(&v, &p), &k * &p);
            }
        }
    }

    #[test]
    fn polynomial_first_integral_is_degenerate(h in poly(2, 3)) {
        // v = (H_y, -H_x) preserves every level of H.
        let quad = h.terms().any(|(m, _)| m.degree() == 2);
        prop_assume!(quad);
        let v = VectorField::new(h.partial("y"), h.partial("x").scale(&qi(-1))).unwrap();
        prop_assert!(invariant_curves_deg2(&v, DEFAULT_BUDGET).degenerate);
        for c in -2..=2 {
            let level = &h - &QPoly::from_int(c);
            prop_assert!(apply_derivation(&v, &level).is_zero());
        }
    }

    #[test]
    fn conic_certificates_reverify(v in field(2, 2)) {
        let s = invariant_curves_deg2(&v, DEFAULT_BUDGET);
        for c in &s.curves {
            prop_assert_eq!(c.degree(), 2);
            prop_assert!(is_invariant_curve(&v, c.curve()).unwrap().is_some());
            prop_assert!(c.recheck(&v));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn lines_match_exhaustive_oracle(v in field(2, 2)) {
        let s = linear_invariant_curves(&v);
        match invariant_lines(&v) {
            None => prop_assert!(s.degenerate),
            Some(lines) => {
                prop_assert!(!s.degenerate);
                prop_assert!(s.complete);
                let expected: Vec<(String, String)> =
                    lines.iter().map(|(c, k)| (c.to_string(), k.to_string())).collect();
                prop_assert_eq!(summary(&s.curves), expected);
            }
        }
    }
}

#[test]
fn oracle_sees_the_cubic_fixture() {
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let one = QPoly::one();
    let v = VectorField::new(&x.pow(2) * &(&x - &one), &y.pow(2) * &(&y - &one)).unwrap();
    let lines: Vec<String> = invariant_lines(&v)
        .unwrap()
        .iter()
        .map(|(c, _)| c.to_string())
        .collect();
    assert_eq!(lines, ["x", "x - 1", "x - y", "y", "y - 1"]);
    assert_eq!(
        summary(&linear_invariant_curves(&v).curves)
            .into_iter()
            .map(|(c, _)| c)
            .collect::<Vec<_>>(),
        lines
    );
}
