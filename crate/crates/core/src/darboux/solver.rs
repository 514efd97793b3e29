//! Zero-dimensional polynomial systems over ℚ by substitution and
//! resultant elimination, with numeric continuation of irrational branches.
//!
//! Exact branches stay in ℚ. Once an irrational root is substituted the
//! branch continues with [`Tracked`] coefficients and can only take
//! linear and univariate steps; a branch that needs more is reported as
//! stuck rather than guessed.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::polycore::numroots::complex_roots;
use crate::polycore::{gcd, rational_roots, resultant, squarefree_decomposition, Rational, UPoly};
use crate::scalar::Tracked;
use crate::{MPoly, QPoly};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Value {
    Exact(Rational),
    Approx(Complex64),
}

impl Value {
    fn tracked(&self) -> Tracked {
        match self {
            Value::Exact(q) => Tracked::from_rational(q),
            Value::Approx(z) => Tracked::new(*z),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.tracked().value
    }
}

type TPoly = MPoly<Tracked>;
type Assignment = BTreeMap<String, Value>;

#[derive(Debug, Default)]
pub(crate) struct Outcome {
    /// Complete solutions with every value rational.
    pub exact: Vec<Vec<Rational>>,
    /// Complete solutions with some irrational value.
    pub approx: Vec<Vec<Complex64>>,
    /// Some exact branch has a free variable: infinitely many solutions.
    pub positive_dimensional: bool,
    /// Numeric branches that needed a nonlinear multivariate step.
    pub stuck: usize,
    /// The step budget ran out; the solution lists may be incomplete.
    pub exhausted: bool,
}

struct Ctx {
    budget: usize,
    stuck: usize,
    exhausted: bool,
}

impl Ctx {
    fn spend(&mut self) -> bool {
        if self.budget == 0 {
            self.exhausted = true;
            return false;
        }
        self.budget -= 1;
        true
    }
}

/// All solutions of `system` in the unknowns `vars`, spending at most
/// `budget` elimination steps.
pub(crate) fn solve(system: &[QPoly], vars: &[&str], budget: usize) -> Outcome {
    let mut ctx = Ctx {
        budget,
        stuck: 0,
        exhausted: false,
    };
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let branches = exact(system.to_vec(), vars.clone(), &mut ctx);
    let mut out = Outcome {
        stuck: ctx.stuck,
        exhausted: ctx.exhausted,
        ..Outcome::default()
    };
    for b in branches {
        let vals: Option<Vec<&Value>> = vars.iter().map(|v| b.assign.get(v)).collect();
        let (Some(vals), true) = (vals, b.residual.is_empty()) else {
            if b.is_exact() {
                out.positive_dimensional = true;
            } else {
                // A free variable next to irrational values: not certifiable.
                out.stuck += 1;
            }
            continue;
        };
        if vals.iter().all(|v| matches!(v, Value::Exact(_))) {
            let row = vals
                .iter()
                .map(|v| match v {
                    Value::Exact(q) => q.clone(),
                    Value::Approx(_) => unreachable!(),
                })
                .collect::<Vec<_>>();
            if !out.exact.contains(&row) {
                out.exact.push(row);
            }
        } else {
            out.approx
                .push(vals.iter().map(|v| v.to_complex()).collect());
        }
    }
    out.exact.sort();
    out
}

fn simplify(sys: Vec<QPoly>) -> Option<Vec<QPoly>> {
    let mut out: Vec<QPoly> = Vec::new();
    for p in sys {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return None;
        }
        let c = p.canonical();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(|p| (p.total_degree(), p.len()));
    Some(out)
}

fn vars_of(p: &QPoly, vars: &[String]) -> Vec<String> {
    vars.iter().filter(|v| p.involves(v)).cloned().collect()
}

/// `var = expr` read off a polynomial linear in `var` with constant
/// coefficient, preferring the shortest polynomial.
fn linear_pivot(sys: &[QPoly], vars: &[String]) -> Option<(usize, String, QPoly)> {
    let mut best: Option<(usize, String, QPoly)> = None;
    for (i, p) in sys.iter().enumerate() {
        for v in vars {
            if p.degree_in(v) != 1 {
                continue;
            }
            let c = p.partial(v);
            let Some(c) = c.constant_value() else {
                continue;
            };
            let expr = &QPoly::var(v) - &p.scale(&c.recip());
            // Truly linear equations first, to keep degrees from growing.
            let key = |q: &QPoly| (q.total_degree(), q.len());
            let better = best.as_ref().is_none_or(|(j, _, _)| key(&sys[*j]) > key(p));
            if better {
                best = Some((i, v.clone(), expr));
            }
        }
    }
    best
}

fn eval_exact(p: &QPoly, sol: &Assignment) -> Option<Value> {
    let mut exact = true;
    for v in p.used_vars() {
        match sol.get(&v) {
            None => return None,
            Some(Value::Approx(_)) => exact = false,
            Some(Value::Exact(_)) => {}
        }
    }
    if exact {
        let at: Vec<(&str, Rational)> = sol
            .iter()
            .filter_map(|(k, v)| match v {
                Value::Exact(q) => Some((k.as_str(), q.clone())),
                Value::Approx(_) => None,
            })
            .collect();
        Some(Value::Exact(p.eval_named(&at, |c| c.clone())))
    } else {
        let at: Vec<(&str, Tracked)> = sol.iter().map(|(k, v)| (k.as_str(), v.tracked())).collect();
        Some(Value::Approx(
            p.eval_named(&at, Tracked::from_rational).value,
        ))
    }
}

fn substitute_exact(sys: &[QPoly], var: &str, value: &QPoly) -> Vec<QPoly> {
    sys.iter().map(|p| p.substitute(var, value)).collect()
}

/// A partial solution: values found so far and equations left unsolved
/// in the variables not yet assigned.
#[derive(Clone, Debug, Default)]
struct Branch {
    assign: Assignment,
    residual: Vec<QPoly>,
}

impl Branch {
    fn solved(assign: Assignment) -> Self {
        Branch {
            assign,
            residual: Vec::new(),
        }
    }

    fn unsolved(residual: Vec<QPoly>) -> Self {
        Branch {
            assign: Assignment::new(),
            residual,
        }
    }

    fn is_exact(&self) -> bool {
        self.assign.values().all(|v| matches!(v, Value::Exact(_)))
    }
}

fn exact(sys: Vec<QPoly>, vars: Vec<String>, ctx: &mut Ctx) -> Vec<Branch> {
    let Some(sys) = simplify(sys) else {
        return Vec::new();
    };
    // Variables no equation mentions stay unassigned: they are free.
    let vars: Vec<String> = vars
        .into_iter()
        .filter(|v| sys.iter().any(|p| p.involves(v)))
        .collect();
    if sys.is_empty() {
        return vec![Branch::default()];
    }
    if sys.len() == 1 && vars.len() >= 2 {
        // A single hypersurface.
        return vec![Branch::unsolved(sys)];
    }
    if !ctx.spend() {
        return Vec::new();
    }

    // Univariate equations. Rational roots branch exactly; a factor
    // without rational roots stays in the system as a constraint, so later
    // eliminants can refine or refute it before anything goes numeric.
    for v in &vars {
        let uni: Vec<&QPoly> = sys
            .iter()
            .filter(|p| p.used_vars() == [v.clone()])
            .collect();
        if uni.is_empty() {
            continue;
        }
        let g = uni
            .iter()
            .skip(1)
            .fold(uni[0].clone(), |acc, p| gcd(&acc, p));
        if g.is_constant() {
            return Vec::new();
        }
        let u = UPoly::from_mpoly(&g, v).expect("univariate");
        let (rational, irrational) = split_roots(&u);
        let settled = uni.len() == 1 && u.monic() == irrational.monic();
        if rational.is_empty() && settled {
            continue;
        }
        let others: Vec<String> = vars.iter().filter(|w| *w != v).cloned().collect();
        let mut out = Vec::new();
        for r in rational {
            let sub = substitute_exact(&sys, v, &QPoly::constant(r.clone()));
            for mut b in exact(sub, others.clone(), ctx) {
                b.assign.insert(v.clone(), Value::Exact(r.clone()));
                out.push(b);
            }
        }
        if irrational.degree().unwrap_or(0) > 0 {
            let mut sub: Vec<QPoly> = sys
                .iter()
                .filter(|p| p.used_vars() != [v.clone()])
                .cloned()
                .collect();
            sub.push(irrational.to_mpoly(v));
            out.extend(exact(sub, vars.clone(), ctx));
        }
        return out;
    }

    // A variable dividing an equation splits the system.
    for p in &sys {
        let divides = |v: &String| {
            p.var_index(v)
                .is_some_and(|i| p.terms().all(|(m, _)| m.exponents()[i] > 0))
        };
        if let Some(v) = vars.iter().find(|v| divides(v)) {
            let zero = substitute_exact(&sys, v, &QPoly::zero());
            let others: Vec<String> = vars.iter().filter(|w| *w != v).cloned().collect();
            let mut out: Vec<Branch> = exact(zero, others, ctx)
                .into_iter()
                .map(|mut b| {
                    b.assign.insert(v.clone(), Value::Exact(Rational::zero()));
                    b
                })
                .collect();
            let reduced = exact_quotient(p, &QPoly::var(v));
            let rest: Vec<QPoly> = sys
                .iter()
                .map(|q| if q == p { reduced.clone() } else { q.clone() })
                .collect();
            out.extend(exact(rest, vars.clone(), ctx));
            return out;
        }
    }

    // Smallest closed subsystem, solved first.
    if let Some(out) = staged(&sys, &vars, ctx) {
        return out;
    }

    // Linear substitution.
    if let Some((i, v, expr)) = linear_pivot(&sys, &vars) {
        let rest: Vec<QPoly> = sys
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let rest = substitute_exact(&rest, &v, &expr);
        let others: Vec<String> = vars.iter().filter(|w| **w != v).cloned().collect();
        let mut out = Vec::new();
        for mut b in exact(rest, others, ctx) {
            match eval_exact(&expr, &b.assign) {
                Some(val) => {
                    b.assign.insert(v.clone(), val);
                }
                None if b.is_exact() => {
                    let pivot = &QPoly::var(&v) - &expr;
                    b.residual
                        .push(pivot.substitute_many(&exact_subs(&b.assign)));
                }
                None => {
                    ctx.stuck += 1;
                    continue;
                }
            }
            out.push(b);
        }
        return out;
    }

    // Every remaining variable is algebraic over ℚ: go numeric.
    if vars.iter().all(|v| has_univariate(&sys, v)) {
        return numeric_split(&sys, &vars, ctx);
    }

    eliminate(&sys, &vars, ctx)
}

fn has_univariate(sys: &[QPoly], v: &str) -> bool {
    sys.iter().any(|p| p.used_vars() == [v.to_string()])
}

/// Branches on the numeric roots of the lowest-degree univariate equation.
fn numeric_split(sys: &[QPoly], vars: &[String], ctx: &mut Ctx) -> Vec<Branch> {
    let (v, p) = vars
        .iter()
        .filter_map(|v| {
            sys.iter()
                .filter(|p| p.used_vars() == [v.clone()])
                .min_by_key(|p| p.degree_in(v))
                .map(|p| (v, p))
        })
        .min_by_key(|(v, p)| p.degree_in(v))
        .expect("univariate equations");
    let u = UPoly::from_mpoly(p, v).expect("univariate");
    let c: Vec<Complex64> = u
        .coeffs()
        .iter()
        .map(|a| Tracked::from_rational(a).value)
        .collect();
    let others: Vec<String> = vars.iter().filter(|w| *w != v).cloned().collect();
    let mut out = Vec::new();
    for z in complex_roots(&c) {
        let val = TPoly::constant(Tracked::new(z));
        let sub: Vec<TPoly> = sys
            .iter()
            .map(|p| to_tracked(p).substitute(v, &val))
            .collect();
        for mut s in numeric(sub, others.clone(), ctx) {
            s.insert(v.clone(), Value::Approx(z));
            out.push(Branch::solved(s));
        }
    }
    out
}

/// Rational roots, and the squarefree factor carrying all other roots.
fn split_roots(u: &UPoly<Rational>) -> (Vec<Rational>, UPoly<Rational>) {
    let mut roots = Vec::new();
    let mut rest = UPoly::new(vec![Rational::one()]);
    for part in squarefree_decomposition(u) {
        let mut p = part.clone();
        for (r, _) in rational_roots(&part).roots {
            p = p.div_rem(&UPoly::new(vec![-r.clone(), Rational::one()])).0;
            roots.push(r);
        }
        rest = rest.mul(&p);
    }
    (roots, rest)
}

fn exact_subs(assign: &Assignment) -> Vec<(&str, QPoly)> {
    assign
        .iter()
        .filter_map(|(k, v)| match v {
            Value::Exact(q) => Some((k.as_str(), QPoly::constant(q.clone()))),
            Value::Approx(_) => None,
        })
        .collect()
}

/// Lifts a branch of a subsystem through the remaining equations `rest`,
/// solving for `others` and whatever the branch left unassigned in `set`.
/// A branch that pinned nothing down cannot make progress and is returned
/// as unsolved.
fn lift(
    sys: &[QPoly],
    rest: &[QPoly],
    others: &[String],
    set: &[String],
    b: Branch,
    ctx: &mut Ctx,
) -> Vec<Branch> {
    if b.assign.is_empty() {
        return vec![Branch::unsolved(sys.to_vec())];
    }
    let mut next = others.to_vec();
    next.extend(set.iter().filter(|v| !b.assign.contains_key(*v)).cloned());
    let mut eqs = rest.to_vec();
    eqs.extend(b.residual);
    continue_with(&eqs, &next, b.assign, ctx)
}

/// Finds the smallest set of variables `V` (at least two) such that the
/// equations in `V` alone are at least as many as `|V|`, solves those, and
/// lifts each solution through the rest.
fn staged(sys: &[QPoly], vars: &[String], ctx: &mut Ctx) -> Option<Vec<Branch>> {
    let mut sets: Vec<Vec<String>> = sys.iter().map(|p| vars_of(p, vars)).collect();
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    for set in &sets {
        if set.len() >= vars.len() {
            break;
        }
        if set.iter().all(|v| has_univariate(sys, v)) {
            continue;
        }
        let sub: Vec<QPoly> = sys
            .iter()
            .filter(|p| vars_of(p, vars).iter().all(|v| set.contains(v)))
            .cloned()
            .collect();
        if sub.len() < set.len() {
            continue;
        }
        let rest: Vec<QPoly> = sys.iter().filter(|p| !sub.contains(p)).cloned().collect();
        let others: Vec<String> = vars.iter().filter(|v| !set.contains(v)).cloned().collect();
        let branches = exact(sub, set.clone(), ctx);
        if branches.iter().any(|b| b.assign.is_empty()) {
            // The subsystem has a free component: it constrains nothing
            // on its own, so look for another one.
            continue;
        }
        let mut out = Vec::new();
        for b in branches {
            out.extend(lift(sys, &rest, &others, set, b, ctx));
        }
        return Some(out);
    }
    None
}

/// Substitutes a partial solution into `rest` and solves for `others`.
fn continue_with(rest: &[QPoly], others: &[String], s: Assignment, ctx: &mut Ctx) -> Vec<Branch> {
    let all_exact = s.values().all(|v| matches!(v, Value::Exact(_)));
    let mut out = Vec::new();
    if all_exact {
        let sub: Vec<QPoly> = rest
            .iter()
            .map(|p| p.substitute_many(&exact_subs(&s)))
            .collect();
        for mut t in exact(sub, others.to_vec(), ctx) {
            t.assign.extend(s.clone());
            out.push(t);
        }
    } else {
        let subs: Vec<(&str, TPoly)> = s
            .iter()
            .map(|(k, v)| (k.as_str(), TPoly::constant(v.tracked())))
            .collect();
        let sub: Vec<TPoly> = rest
            .iter()
            .map(|p| to_tracked(p).substitute_many(&subs))
            .collect();
        for mut t in numeric(sub, others.to_vec(), ctx) {
            t.extend(s.clone());
            out.push(Branch::solved(t));
        }
    }
    out
}

/// Projects out one variable by resultants, solves the projection, and
/// lifts each solution back.
fn eliminate(sys: &[QPoly], vars: &[String], ctx: &mut Ctx) -> Vec<Branch> {
    let v = vars
        .iter()
        .filter(|v| !has_univariate(sys, v))
        .min_by_key(|v| {
            let deg = sys.iter().map(|p| p.degree_in(v)).max().unwrap_or(0);
            let count = sys.iter().filter(|p| p.involves(v)).count();
            (deg, count)
        })
        .expect("variables remain")
        .clone();
    let (with, without): (Vec<QPoly>, Vec<QPoly>) =
        sys.iter().cloned().partition(|p| p.involves(&v));
    let others: Vec<String> = vars.iter().filter(|w| **w != v).cloned().collect();
    let mut projected = without.clone();
    if with.len() >= 2 {
        let a = with
            .iter()
            .min_by_key(|p| (p.degree_in(&v), p.len()))
            .expect("nonempty")
            .clone();
        for b in with.iter().filter(|b| **b != a) {
            if !ctx.spend() {
                return Vec::new();
            }
            let r = resultant(&a, b, &v).expect("both involve the variable");
            if r.is_zero() {
                // Common factor: split into the factor and the cofactors.
                let g = gcd(&a, b);
                let mut out = Vec::new();
                for branch in [
                    vec![g.clone()],
                    vec![exact_quotient(&a, &g), exact_quotient(b, &g)],
                ] {
                    let mut s: Vec<QPoly> = sys
                        .iter()
                        .filter(|p| **p != a && *p != b)
                        .cloned()
                        .collect();
                    s.extend(branch);
                    out.extend(exact(s, vars.to_vec(), ctx));
                }
                return out;
            }
            projected.push(r);
        }
    }
    let mut out = Vec::new();
    for b in exact(projected, others.clone(), ctx) {
        // The projection may leave variables free that the lifted
        // equations still constrain; they are solved together with `v`.
        let mut set = others.clone();
        set.push(v.clone());
        out.extend(lift(sys, &with, &[], &set, b, ctx));
    }
    out
}

fn exact_quotient(a: &QPoly, g: &QPoly) -> QPoly {
    crate::polycore::exact_div(a, g)
        .expect("nonzero gcd")
        .expect("gcd divides")
}

fn to_tracked(p: &QPoly) -> TPoly {
    p.map_coeffs(Tracked::from_rational)
}

fn t_vars(p: &TPoly, vars: &[String]) -> Vec<String> {
    vars.iter().filter(|v| p.involves(v)).cloned().collect()
}

/// Numeric continuation: linear and univariate steps only.
fn numeric(sys: Vec<TPoly>, vars: Vec<String>, ctx: &mut Ctx) -> Vec<Assignment> {
    let mut clean: Vec<TPoly> = Vec::new();
    for p in sys {
        // Drop terms that are rounding noise relative to the polynomial.
        let scale = p.terms().map(|(_, c)| c.magnitude).fold(0.0, f64::max);
        let p = TPoly::from_terms(
            &p.vars()[..],
            p.terms()
                .filter(|(_, c)| c.value.norm() > 1e-9 * scale && !c.is_zero())
                .map(|(m, c)| (m.exponents().to_vec(), *c)),
        );
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Vec::new();
        }
        clean.push(p);
    }
    let sys = clean;
    // Variables no equation mentions stay unassigned, as in exact mode.
    let vars: Vec<String> = vars
        .into_iter()
        .filter(|v| sys.iter().any(|p| p.involves(v)))
        .collect();
    if sys.is_empty() {
        return vec![Assignment::new()];
    }
    if !ctx.spend() {
        return Vec::new();
    }
    // Linear step: lowest total degree first, then the largest pivot
    // relative to its equation.
    let mut pivot: Option<(usize, String, Tracked, (u32, f64))> = None;
    for (i, p) in sys.iter().enumerate() {
        let scale = p.terms().map(|(_, c)| c.value.norm()).fold(0.0, f64::max);
        for v in &vars {
            if p.degree_in(v) != 1 {
                continue;
            }
            let Some(c) = p.partial(v).constant_value() else {
                continue;
            };
            let key = (p.total_degree(), -(c.value.norm() / scale));
            if pivot.as_ref().is_none_or(|(_, _, _, k)| key < *k) {
                pivot = Some((i, v.clone(), c, key));
            }
        }
    }
    if let Some((i, v, c, _)) = pivot {
        let p = &sys[i];
        let expr = &TPoly::var(&v) - &p.scale(&(Tracked::new(Complex64::one()) / c));
        let rest: Vec<TPoly> = sys
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.substitute(&v, &expr))
            .collect();
        let others: Vec<String> = vars.iter().filter(|w| **w != v).cloned().collect();
        let mut out = Vec::new();
        for mut s in numeric(rest, others, ctx) {
            let at: Vec<(&str, Tracked)> =
                s.iter().map(|(k, x)| (k.as_str(), x.tracked())).collect();
            if expr
                .used_vars()
                .iter()
                .any(|w| *w != v && !s.contains_key(w))
            {
                // Depends on a free variable; left for the caller.
                out.push(s);
                continue;
            }
            let val = expr.eval_named(&at, |c| *c);
            s.insert(v.clone(), Value::Approx(val.value));
            out.push(s);
        }
        return out;
    }
    // Univariate step: roots of the lowest-degree univariate equation that
    // satisfy the others.
    for v in &vars {
        let mut uni: Vec<&TPoly> = sys
            .iter()
            .filter(|p| t_vars(p, &vars) == [v.clone()])
            .collect();
        if uni.is_empty() {
            continue;
        }
        uni.sort_by_key(|p| p.degree_in(v));
        let lead = uni[0];
        let mut coeffs = vec![Complex64::zero(); lead.degree_in(v) as usize + 1];
        let idx = lead.var_index(v).expect("involves v");
        for (m, c) in lead.terms() {
            coeffs[m.exponents()[idx] as usize] += c.value;
        }
        let others: Vec<String> = vars.iter().filter(|w| *w != v).cloned().collect();
        let mut out = Vec::new();
        let mut seen: Vec<Complex64> = Vec::new();
        for z in complex_roots(&coeffs) {
            if seen
                .iter()
                .any(|w| (w - z).norm() <= 1e-7 * (1.0 + z.norm()))
            {
                continue;
            }
            seen.push(z);
            let val = TPoly::constant(Tracked::new(z));
            let sub: Vec<TPoly> = sys.iter().map(|p| p.substitute(v, &val)).collect();
            for mut s in numeric(sub, others.clone(), ctx) {
                s.insert(v.clone(), Value::Approx(z));
                out.push(s);
            }
        }
        return out;
    }
    if vars.len() == 2 {
        if let Some(out) = two_variables(&sys, &vars) {
            return out;
        }
    }
    ctx.stuck += 1;
    Vec::new()
}

/// Coefficients of `p` in `u` (ascending) at `w = at`, padded to `deg + 1`.
fn slice_coeffs(p: &TPoly, u: &str, w: &str, at: Complex64, deg: u32) -> Vec<Complex64> {
    let mut c = vec![Complex64::zero(); deg as usize + 1];
    let iu = p.var_index(u);
    let iw = p.var_index(w);
    for (m, k) in p.terms() {
        let e = m.exponents();
        let du = iu.map_or(0, |i| e[i]) as usize;
        let dw = iw.map_or(0, |i| e[i]) as i32;
        c[du] += k.value * at.powi(dw);
    }
    c
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut d = Complex64::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .expect("nonempty");
        if m[piv][col].norm() == 0.0 {
            return Complex64::zero();
        }
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        d *= m[col][col];
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest.iter_mut() {
            let f = row[col] / pivot[col];
            for (a, b) in row[col..n].iter_mut().zip(&pivot[col..n]) {
                *a -= f * b;
            }
        }
    }
    d
}

fn sylvester(a: &[Complex64], b: &[Complex64]) -> Vec<Vec<Complex64>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Complex64::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            r[i + j] = *c;
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Complex64::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            r[i + j] = *c;
        }
        rows.push(r);
    }
    rows
}

/// Two equations in two unknowns and possibly more checks: the resultant
/// is sampled on the unit circle and interpolated, its roots paired with
/// roots of one equation, polished by Newton on both, and kept when every
/// equation vanishes. `None` when the chosen pair shares a factor.
fn two_variables(sys: &[TPoly], vars: &[String]) -> Option<Vec<Assignment>> {
    let mut both: Vec<&TPoly> = sys
        .iter()
        .filter(|p| vars.iter().all(|v| p.involves(v)))
        .collect();
    if both.len() < 2 {
        return None;
    }
    both.sort_by_key(|p| (p.total_degree(), p.len()));
    let (u, w) = if both[0].degree_in(&vars[0]) <= both[0].degree_in(&vars[1]) {
        (&vars[0], &vars[1])
    } else {
        (&vars[1], &vars[0])
    };
    let (a, b) = (both[0], both[1]);
    let (au, bu) = (a.degree_in(u), b.degree_in(u));
    let bound = (a.degree_in(w) * bu + b.degree_in(w) * au) as usize;
    let n = bound + 1;
    let samples: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    let values: Vec<Complex64> = samples
        .iter()
        .map(|&z| {
            det(sylvester(
                &slice_coeffs(a, u, w, z, au),
                &slice_coeffs(b, u, w, z, bu),
            ))
        })
        .collect();
    let coeffs: Vec<Complex64> = (0..n)
        .map(|k| {
            values
                .iter()
                .zip(&samples)
                .map(|(v, z)| v * z.powi(-(k as i32)))
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let coeffs: Vec<Complex64> = coeffs
        .into_iter()
        .map(|c| {
            if c.norm() <= 1e-12 * top {
                Complex64::zero()
            } else {
                c
            }
        })
        .collect();
    if top == 0.0 || coeffs.iter().skip(1).all(|c| c.is_zero()) {
        return None;
    }
    let mut out: Vec<Assignment> = Vec::new();
    for wz in complex_roots(&coeffs) {
        let slice = slice_coeffs(a, u, w, wz, au);
        for uz in complex_roots(&slice) {
            let (uz, wz) = newton2(a, b, (u, w), (uz, wz));
            let at = [
                (u.as_str(), Tracked::new(uz)),
                (w.as_str(), Tracked::new(wz)),
            ];
            if !sys.iter().all(|p| p.eval_named(&at, |c| *c).is_zero()) {
                continue;
            }
            let close = |s: &Assignment| {
                (s[u].to_complex() - uz).norm() <= 1e-7 * (1.0 + uz.norm())
                    && (s[w].to_complex() - wz).norm() <= 1e-7 * (1.0 + wz.norm())
            };
            if !out.iter().any(close) {
                let mut s = Assignment::new();
                s.insert(u.clone(), Value::Approx(uz));
                s.insert(w.clone(), Value::Approx(wz));
                out.push(s);
            }
        }
    }
    Some(out)
}

/// A few Newton steps on `a = b = 0`; returns the start if the Jacobian is
/// singular.
fn newton2(
    a: &TPoly,
    b: &TPoly,
    (u, w): (&str, &str),
    start: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    let (au, aw, bu, bw) = (a.partial(u), a.partial(w), b.partial(u), b.partial(w));
    let ev = |p: &TPoly, z: (Complex64, Complex64)| {
        p.eval_named(&[(u, Tracked::new(z.0)), (w, Tracked::new(z.1))], |c| *c)
            .value
    };
    let mut z = start;
    for _ in 0..8 {
        let (fa, fb) = (ev(a, z), ev(b, z));
        let j = [[ev(&au, z), ev(&aw, z)], [ev(&bu, z), ev(&bw, z)]];
        let d = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if d.norm() == 0.0 {
            break;
        }
        let du = (fa * j[1][1] - fb * j[0][1]) / d;
        let dw = (j[0][0] * fb - j[1][0] * fa) / d;
        z = (z.0 - du, z.1 - dw);
        if du.norm() + dw.norm() <= 1e-15 * (1.0 + z.0.norm() + z.1.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{q, qi};

    fn v(n: &str) -> QPoly {
        QPoly::var(n)
    }
    fn c(n: i64) -> QPoly {
        QPoly::from_int(n)
    }

    #[test]
    fn linear_and_univariate() {
        // a + b = 3, a b = 2.
        let sys = [&(&v("a") + &v("b")) - &c(3), &(&v("a") * &v("b")) - &c(2)];
        let out = solve(&sys, &["a", "b"], 100);
        assert_eq!(out.exact, vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
        assert!(out.approx.is_empty() && !out.positive_dimensional);
    }

    #[test]
    fn irrational_branches_are_numeric() {
        // a^2 = 2, b = a + 1/2.
        let sys = [
            &v("a").pow(2) - &c(2),
            &(&v("b") - &v("a")) - &QPoly::constant(q(1, 2)),
        ];
        let out = solve(&sys, &["a", "b"], 100);
        assert!(out.exact.is_empty());
        assert_eq!(out.approx.len(), 2);
        for s in &out.approx {
            assert!((s[0].norm() - 2f64.sqrt()).abs() < 1e-12);
            assert!((s[1] - s[0] - 0.5).norm() < 1e-12);
        }
    }

    #[test]
    fn nonlinear_elimination() {
        // a^2 + b^2 = 5, a b^2 = 4: (1, ±2) plus irrational/complex points.
        let sys = [
            &(&v("a").pow(2) + &v("b").pow(2)) - &c(5),
            &(&v("a") * &v("b").pow(2)) - &c(4),
        ];
        let out = solve(&sys, &["a", "b"], 1000);
        assert!(out.exact.contains(&vec![qi(1), qi(2)]));
        assert!(out.exact.contains(&vec![qi(1), qi(-2)]));
        for s in &out.approx {
            let (a, b) = (s[0], s[1]);
            assert!((a * a + b * b - 5.0).norm() < 1e-8);
            assert!((a * b * b - 4.0).norm() < 1e-8);
        }
        assert_eq!(out.exact.len() + out.approx.len(), 6);
    }

    #[test]
    fn free_variables_are_flagged() {
        let sys = [&v("a") - &c(1)];
        let out = solve(&sys, &["a", "b"], 100);
        assert!(out.positive_dimensional);
        let sys = [&v("a") - &v("b"), c(0)];
        assert!(solve(&sys, &["a", "b"], 100).positive_dimensional);
        let sys = [c(1)];
        let out = solve(&sys, &["a"], 100);
        assert!(out.exact.is_empty() && !out.positive_dimensional);
    }

    #[test]
    fn budget_is_reported() {
        let sys = [
            &(&v("a").pow(2) + &v("b").pow(2)) - &c(5),
            &(&v("a") * &v("b").pow(2)) - &c(4),
        ];
        assert!(solve(&sys, &["a", "b"], 1).exhausted);
    }
}
