use dweb::dvariety::VectorField;
use dweb::numflow::{flow, invariance_flow_check, singular_points};
use dweb::polycore::qi;
use dweb::QPoly;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(rng: &mut ChaCha8Rng, deg: u32, range: i64) -> QPoly {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for j in 0..=d {
            let mut c = rng.gen_range(-range..=range);
            // Keep the top-degree part generic.
            if d == deg && c == 0 {
                c = 1;
            }
            terms.push((vec![d - j, j], qi(c)));
        }
    }
    QPoly::from_terms(&["x", "y"], terms)
}

#[test]
fn multiplicities_add_up_to_bezout() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for deg in [2u32, 3] {
        for _ in 0..10 {
            let v = VectorField::new(dense(&mut rng, deg, 9), dense(&mut rng, deg, 9)).unwrap();
            let pts = singular_points(&v, 1e-10).unwrap();
            let total: usize = pts.iter().map(|p| p.multiplicity).sum();
            assert_eq!(total, (deg * deg) as usize, "{:?}", v);
            assert!(pts.iter().all(|p| p.residual < 1e-10));
        }
    }
}

#[test]
fn halving_tolerance_does_not_worsen_rotation_error() {
    let v = VectorField::new(QPoly::var("y"), -QPoly::var("x")).unwrap();
    let t = 2.0 * std::f64::consts::PI;
    let err = |tol: f64| {
        let z = flow(
            &v,
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            t,
            tol,
        )
        .unwrap()
        .last();
        (z[0] - 1.0).norm().max(z[1].norm())
    };
    let mut prev = err(1e-6);
    for k in 1..8 {
        let e = err(1e-6 / 2f64.powi(k));
        assert!(e <= prev * 1.0001, "tol 2^-{k}: {e} > {prev}");
        prev = e;
    }
}

#[test]
fn limit_cycle_stays_on_circle() {
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let r = &(&x.pow(2) + &y.pow(2)) - &QPoly::one();
    let v = VectorField::new(&(&x * &r) - &y, &(&y * &r) + &x).unwrap();
    let report = invariance_flow_check(&v, &r, 6, 5.0, 1e-6, 11).unwrap();
    assert!(report.passed, "{report:?}");
    assert!(report.worst_residual < 1e-6);
}

#[test]
fn random_lines_drift_off() {
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let one = QPoly::one();
    let v = VectorField::new(&x.pow(2) * &(&x - &one), &y.pow(2) * &(&y - &one)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let (a, b, c) = (
            rng.gen_range(1..=5),
            rng.gen_range(1..=5),
            rng.gen_range(1..=5),
        );
        let line = &(&x.scale(&qi(a)) + &y.scale(&qi(b))) - &QPoly::from_int(c);
        let report = invariance_flow_check(&v, &line, 3, 1.0, 1e-6, 3).unwrap();
        assert!(!report.passed, "{line} passed");
    }
}
