use super::solver::{solve, Outcome};
use super::{
    coefficients_in, extactic1, instantiate, numerically_invariant, CurveSearch, DarbouxCert,
    DEFAULT_BUDGET,
};
use crate::dvariety::VectorField;
use crate::QPoly;

/// All invariant lines with rational coefficients, searched in the families
/// `x - c`, `y - c` and `y - m x - c`. Irrational and complex lines are
/// returned as numeric witnesses.
pub fn linear_invariant_curves(v: &VectorField) -> CurveSearch {
    if extactic1(v).is_zero() {
        return CurveSearch::degenerate();
    }
    let (x, y) = (QPoly::var("x"), QPoly::var("y"));
    let (m, c) = (QPoly::var("m"), QPoly::var("c"));
    // (line, its derivative restricted to the line, unknowns)
    let families = [
        (&x - &c, v.f().substitute("x", &c), vec!["c"]),
        (&y - &c, v.g().substitute("y", &c), vec!["c"]),
        (
            &(&y - &(&m * &x)) - &c,
            (v.g() - &(&m * v.f())).substitute("y", &(&(&m * &x) + &c)),
            vec!["m", "c"],
        ),
    ];
    let mut out = CurveSearch {
        complete: true,
        ..CurveSearch::default()
    };
    for (line, restricted, unknowns) in &families {
        let system = coefficients_in(restricted, &["x", "y"]);
        let sol = solve(&system, unknowns, DEFAULT_BUDGET);
        if absorb(v, &mut out, line, unknowns, &sol) {
            return CurveSearch::degenerate();
        }
    }
    out.finish()
}

/// Folds one family's solutions into `out`; true on a positive-dimensional
/// solution set.
pub(super) fn absorb(
    v: &VectorField,
    out: &mut CurveSearch,
    template: &QPoly,
    unknowns: &[&str],
    sol: &Outcome,
) -> bool {
    if sol.positive_dimensional {
        return true;
    }
    out.complete &= !sol.exhausted;
    out.stuck += sol.stuck;
    let names: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
    for row in &sol.exact {
        let subs: Vec<(&str, QPoly)> = unknowns
            .iter()
            .zip(row)
            .map(|(n, q)| (*n, QPoly::constant(q.clone())))
            .collect();
        let p = template.substitute_many(&subs);
        if p.is_constant() {
            continue;
        }
        if let Some(cert) = DarbouxCert::verify(v, &p) {
            out.push_curve(cert);
        }
    }
    for row in &sol.approx {
        let p = instantiate(template, &names, row);
        if p.total_degree() > 0 && numerically_invariant(v, &p) {
            out.push_witness(p);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn cubic_lines() {
        let s = linear_invariant_curves(&cubic());
        let names: Vec<String> = s.curves.iter().map(|c| c.curve().to_string()).collect();
        assert_eq!(names, ["x", "x - 1", "x - y", "y", "y - 1"]);
        assert_eq!(s.unresolved(), 0);
        assert!(s.complete && !s.degenerate);
        for cert in &s.curves {
            assert!(cert.recheck(&cubic()));
        }
    }

    #[test]
    fn degenerate_and_complex_lines() {
        assert!(linear_invariant_curves(&radial()).degenerate);
        let s = linear_invariant_curves(&limit_cycle());
        assert!(s.curves.is_empty());
        // x ± i y.
        assert_eq!(s.witnesses.len(), 2);
        let s = linear_invariant_curves(&rotation());
        assert_eq!(s.witnesses.len(), 2);
    }
}
