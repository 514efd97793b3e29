use dweb::dvariety::{
    apply_derivation, divisor_chart1, foliation_of, invariance_certificate, is_invariant_curve,
    lie_derivative, product_field, projectivize, VectorField,
};
use dweb::polycore::{exact_div, qi, radical};
use dweb::symweb::{reduce, singular_locus, tang_webs, SymForm, TangencyResult, Web};
use dweb::QPoly;
use num_traits::Zero;
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

fn field(deg: u32) -> impl Strategy<Value = VectorField> {
    (poly(deg, 5), poly(deg, 5))
        .prop_filter_map("nonzero field", |(f, g)| VectorField::new(f, g).ok())
}

fn univariate(var: &'static str, deg: u32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-4i64..=4, deg as usize + 1).prop_map(move |cs| {
        QPoly::from_terms(
            &[var],
            cs.into_iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], qi(c))),
        )
    })
}

fn form(max_r: usize) -> impl Strategy<Value = SymForm> {
    (0..=max_r).prop_flat_map(|r| prop::collection::vec(poly(2, 3), r + 1).prop_map(SymForm::new))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_is_leibniz(v in field(2), p in poly(2, 4), q in poly(2, 4)) {
        let lhs = apply_derivation(&v, &(&p * &q));
        let rhs = &(&apply_derivation(&v, &p) * &q) + &(&p * &apply_derivation(&v, &q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_is_leibniz_over_box(v in field(2), a in form(2), b in form(1)) {
        let lhs = lie_derivative(&v, &a.box_product(&b));
        let rhs = lie_derivative(&v, &a).box_product(&b).add(&a.box_product(&lie_derivative(&v, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tangent_foliation_is_invariant(v in field(3)) {
        let w = foliation_of(&v).unwrap();
        let cert = invariance_certificate(&v, &w);
        prop_assert!(cert.is_some_and(|c| c.recheck(&v)));
    }

    #[test]
    fn riccati_overlap(v in field(3)) {
        prop_assert!(projectivize(&v).overlap_holds());
    }

    #[test]
    fn block_restriction(v in field(2), w in field(2), p in poly(2, 4)) {
        let pf = product_field(&[v.clone(), w]).unwrap();
        let p1 = p.rename(&[("x", "x1"), ("y", "y1")]);
        let expect = apply_derivation(&v, &p).rename(&[("x", "x1"), ("y", "y1")]);
        prop_assert_eq!(pf.apply(&p1), expect);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reduction_of_invariant_web_is_invariant(v in field(2), k in 1u32..=3) {
        let f = foliation_of(&v).unwrap();
        let w = Web::new(f.form().box_pow(k)).unwrap();
        prop_assert!(invariance_certificate(&v, &w).is_some());
        let r = reduce(&w);
        prop_assert!(r.form().is_associate(f.form()));
        prop_assert!(invariance_certificate(&v, &r).is_some());
    }

    #[test]
    fn singular_points_of_invariant_webs_are_zeros(v in field(2), k in 1u32..=2) {
        let f = foliation_of(&v).unwrap();
        let w = Web::new(f.form().box_pow(k)).unwrap();
        prop_assert!(invariance_certificate(&v, &w).is_some());
        for (a, b) in singular_locus(&w).points {
            let at = [("x", a.clone()), ("y", b.clone())];
            prop_assert!(v.f().eval_named(&at, |c| c.clone()).is_zero());
            prop_assert!(v.g().eval_named(&at, |c| c.clone()).is_zero());
        }
    }

    // Separable fields (f(x), g(y)) keep dx, dy and the tangent foliation
    // invariant, which gives pairs of invariant webs without common subwebs.
    #[test]
    fn tangency_of_invariant_webs_is_invariant(
        f in univariate("x", 3),
        g in univariate("y", 3),
        j in 1u32..=2,
        k in 1u32..=2,
    ) {
        let Ok(v) = VectorField::new(f.clone(), g.clone()) else { return Ok(()) };
        prop_assume!(!f.is_constant() || !g.is_constant());
        let tangent = foliation_of(&v).unwrap();
        let webs = [
            Web::new(SymForm::dx()).unwrap(),
            Web::new(SymForm::dy()).unwrap(),
            Web::new(SymForm::dx().box_product(&SymForm::dy())).unwrap(),
            Web::new(tangent.form().box_pow(j)).unwrap(),
            Web::new(tangent.form().box_pow(k).box_product(&SymForm::dx())).unwrap(),
        ];
        for a in &webs {
            prop_assert!(invariance_certificate(&v, a).is_some());
        }
        for a in &webs {
            for b in &webs {
                if let TangencyResult::Locus(t) = tang_webs(a, b) {
                    if t.is_constant() {
                        continue;
                    }
                    let cert = is_invariant_curve(&v, &radical(&t).unwrap()).unwrap();
                    prop_assert!(cert.is_some(), "tangency {} not invariant", t);
                }
            }
        }
    }

    #[test]
    fn invariant_web_has_invariant_direction_divisor(v in field(2), k in 1u32..=2) {
        let f = foliation_of(&v).unwrap();
        let phi = divisor_chart1(&f.form().box_pow(k));
        let lifted = projectivize(&v).apply_chart1(&phi);
        prop_assert!(exact_div(&lifted, &phi).unwrap().is_some());
    }
}
