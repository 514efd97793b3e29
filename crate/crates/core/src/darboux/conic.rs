use num_complex::Complex64;
use num_traits::{Signed, Zero};

use super::linear::absorb;
use super::solver::solve;
use super::{coefficients_in, CurveSearch};
use crate::dvariety::{apply_derivation, VectorField};
use crate::polycore::{qi, Rational};
use crate::{CPoly, QPoly};

/// Elimination steps allowed per normalization chart.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Invariant conics irreducible over ℚ, with cofactor degree at most
/// `deg(v) - 1`.
///
/// The leading coefficient among `x^2, xy, y^2` is normalized to one in
/// turn, giving three disjoint charts that run concurrently. A one-parameter
/// family of solutions marks the search degenerate.
pub fn invariant_curves_deg2(v: &VectorField, budget: usize) -> CurveSearch {
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let p = |i: usize| QPoly::var(&format!("p{i}"));
    let tail = &(&(&p(3) * &x) + &(&p(4) * &y)) + &p(5);
    let charts = [
        (
            &(&(&x.pow(2) + &(&p(1) * &(&x * &y))) + &(&p(2) * &y.pow(2))) + &tail,
            vec!["p1", "p2", "p3", "p4", "p5"],
        ),
        (
            &(&(&x * &y) + &(&p(2) * &y.pow(2))) + &tail,
            vec!["p2", "p3", "p4", "p5"],
        ),
        (&y.pow(2) + &tail, vec!["p3", "p4", "p5"]),
    ];
    let n = v.degree().max(1);
    let mut k = QPoly::zero();
    let mut k_names = Vec::new();
    for d in 0..n {
        for j in 0..=d {
            let name = format!("k{}", k_names.len() + 1);
            k = &k + &(&QPoly::var(&name) * &(&x.pow(d - j) * &y.pow(j)));
            k_names.push(name);
        }
    }
    let outcomes: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = charts
            .iter()
            .map(|(template, unknowns)| {
                let k = &k;
                let k_names = &k_names;
                s.spawn(move || {
                    let residual = &apply_derivation(v, template) - &(k * template);
                    let system = coefficients_in(&residual, &["x", "y"]);
                    let mut vars: Vec<&str> = unknowns.clone();
                    vars.extend(k_names.iter().map(String::as_str));
                    (solve(&system, &vars, budget), vars)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chart worker"))
            .collect()
    });
    let mut out = CurveSearch {
        complete: true,
        ..CurveSearch::default()
    };
    for ((template, _), (sol, vars)) in charts.iter().zip(outcomes) {
        // Cofactor unknowns are carried along; only the curve part matters.
        let mut scratch = CurveSearch {
            complete: true,
            ..CurveSearch::default()
        };
        if absorb(v, &mut scratch, template, &vars, &sol) {
            return CurveSearch::degenerate();
        }
        out.complete &= scratch.complete;
        out.stuck += scratch.stuck;
        for cert in scratch.curves {
            if cert.degree() == 2 && !rationally_reducible(cert.curve()) {
                out.push_curve(cert);
            }
        }
        for w in scratch.witnesses {
            if !numerically_reducible(&w) {
                out.push_witness(w);
            }
        }
    }
    out.finish()
}

fn conic_coeffs(p: &QPoly) -> [Rational; 6] {
    [
        p.coeff_of(&[("x", 2)]),
        p.coeff_of(&[("x", 1), ("y", 1)]),
        p.coeff_of(&[("y", 2)]),
        p.coeff_of(&[("x", 1)]),
        p.coeff_of(&[("y", 1)]),
        p.coeff_of(&[]),
    ]
}

fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    let root = |n: &num_bigint::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    root(q.numer()) && root(q.denom())
}

/// `α t^2 + β t + γ` is the square of a polynomial over ℚ.
fn square_over_q(alpha: &Rational, beta: &Rational, gamma: &Rational) -> bool {
    if alpha.is_zero() {
        beta.is_zero() && is_rational_square(gamma)
    } else {
        is_rational_square(alpha) && beta * beta == qi(4) * alpha * gamma
    }
}

/// Whether a conic splits into two lines over ℚ.
fn rationally_reducible(p: &QPoly) -> bool {
    let [a, b, c, d, e, f] = conic_coeffs(p);
    let two = qi(2);
    let det = &a * &(&c * &f - &e * &e / qi(4))
        - &b / &two * (&b / &two * &f - &e / &two * &d / &two)
        + &d / &two * (&b / &two * &e / &two - &c * &d / &two);
    if !det.is_zero() {
        return false;
    }
    if !a.is_zero() {
        // Discriminant in x of a x^2 + (b y + d) x + (c y^2 + e y + f).
        let alpha = &b * &b - qi(4) * &a * &c;
        let beta = qi(2) * &b * &d - qi(4) * &a * &e;
        let gamma = &d * &d - qi(4) * &a * &f;
        square_over_q(&alpha, &beta, &gamma)
    } else if !c.is_zero() {
        let alpha = &b * &b;
        let beta = qi(2) * &b * &e - qi(4) * &c * &d;
        let gamma = &e * &e - qi(4) * &c * &f;
        square_over_q(&alpha, &beta, &gamma)
    } else {
        // b x y + d x + e y + f = (b x + e)(b y + d) / b when e d = b f.
        true
    }
}

/// Whether a numeric conic splits into lines over ℂ.
fn numerically_reducible(p: &CPoly) -> bool {
    let co = |powers: &[(&str, u32)]| p.coeff_of(powers);
    let a = co(&[("x", 2)]);
    let b = co(&[("x", 1), ("y", 1)]) / 2.0;
    let c = co(&[("y", 2)]);
    let d = co(&[("x", 1)]) / 2.0;
    let e = co(&[("y", 1)]) / 2.0;
    let f = co(&[]);
    let det: Complex64 = a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d);
    let scale = [a, b, c, d, e, f]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    det.norm() <= 1e-8 * scale.powi(3)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn reducibility_over_q() {
        let r = |p: QPoly| rationally_reducible(&p);
        assert!(r(&x() * &y()));
        assert!(r(&x().pow(2) - &y().pow(2)));
        assert!(r((&x() + &c(1)).pow(2)));
        assert!(r(&(&x() - &c(1)) * &(&x() + &y())));
        assert!(!r(&x().pow(2) + &y().pow(2)));
        assert!(!r(&x().pow(2) - &y().pow(2).scale(&qi(2))));
        assert!(!r(&(&x().pow(2) + &y().pow(2)) - &c(1)));
        assert!(!r(&x().pow(2) - &y()));
        assert!(r(&y().pow(2) - &c(4)));
        assert!(!r(&y().pow(2) - &c(2)));
    }

    #[test]
    fn limit_cycle_conics() {
        let v = limit_cycle();
        let s = invariant_curves_deg2(&v, DEFAULT_BUDGET);
        assert!(s.complete && !s.degenerate);
        let names: Vec<String> = s.curves.iter().map(|c| c.curve().to_string()).collect();
        assert!(names.contains(&"x^2 + y^2 - 1".to_string()), "{names:?}");
        let circle = s
            .curves
            .iter()
            .find(|c| c.curve().to_string() == "x^2 + y^2 - 1")
            .unwrap();
        assert_eq!(
            circle.cofactor(),
            &(&x().pow(2) + &y().pow(2)).scale(&qi(2))
        );
    }

    #[test]
    fn first_integral_is_degenerate() {
        assert!(invariant_curves_deg2(&rotation(), DEFAULT_BUDGET).degenerate);
        assert!(invariant_curves_deg2(&radial(), DEFAULT_BUDGET).degenerate);
    }

    #[test]
    fn cubic_has_no_new_conic() {
        let s = invariant_curves_deg2(&cubic(), DEFAULT_BUDGET);
        assert!(s.complete && !s.degenerate);
        let names: Vec<String> = s.curves.iter().map(|c| c.curve().to_string()).collect();
        assert!(s.curves.is_empty(), "{names:?} {:?}", s.witnesses);
    }
}
