use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::vars::{self, VarList};
use super::PolyError;
use crate::scalar::Scalar;

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is at most ours.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a [`Scalar`] coefficient type.
///
/// Terms with zero coefficients are never stored, so structural equality of
/// the term maps is polynomial equality once both sides share variables.
#[derive(Clone)]
pub struct MPoly<C> {
    vars: VarList,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MPoly<C> {
    pub fn zero_in(vars: &VarList) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::zero_in(&vars::var_list::<&str>(&[]))
    }

    pub fn constant(c: C) -> Self {
        Self::constant_in(c, &vars::var_list::<&str>(&[]))
    }

    pub fn constant_in(c: C, vars: &VarList) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: &str) -> Self {
        let vars = vars::var_list(&[name]);
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), C::one());
        MPoly { vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; exponents are
    /// indexed by the sorted variable list of `names`.
    pub fn from_terms<S: AsRef<str>>(
        names: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Self {
        let sorted = vars::var_list(names);
        let perm: Vec<usize> = names
            .iter()
            .map(|n| sorted.iter().position(|s| s == n.as_ref()).unwrap())
            .collect();
        let mut p = Self::zero_in(&sorted);
        for (exps, c) in terms {
            assert_eq!(exps.len(), names.len(), "exponent vector length");
            let mut e = vec![0u32; sorted.len()];
            for (i, k) in exps.into_iter().enumerate() {
                e[perm[i]] += k;
            }
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the monomial given by `(name, exponent)` pairs.
    pub fn coeff_of(&self, powers: &[(&str, u32)]) -> C {
        let mut e = vec![0u32; self.vars.len()];
        for (name, k) in powers {
            match self.var_index(name) {
                Some(i) => e[i] += k,
                None if *k == 0 => {}
                None => return C::zero(),
            }
        }
        self.coeff(&Monomial(e))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables that actually occur in some term.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn involves(&self, name: &str) -> bool {
        self.degree_in(name) > 0
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading_term().map_or_else(C::zero, |(_, c)| c.clone())
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self -= c * m * q`, with `q` over the same variables.
    pub(crate) fn sub_scaled_shift(&mut self, q: &Self, m: &Monomial, c: &C) {
        debug_assert!(self.vars[..] == q.vars[..]);
        for (k, a) in &q.terms {
            self.add_term(k.mul(m), -(a.clone() * c.clone()));
        }
    }

    pub(crate) fn push_term(&mut self, m: Monomial, c: C) {
        self.add_term(m, c);
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, target: &VarList) -> Self {
        if self.vars[..] == target[..] {
            return MPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .expect("embedding target must contain every variable")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &k) in m.0.iter().enumerate() {
                    e[map[i]] = k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MPoly {
            vars: target.clone(),
            terms,
        }
    }

    /// Embeds into the union of our variables and `names`.
    pub fn with_vars<S: AsRef<str>>(&self, names: &[S]) -> Self {
        let merged = vars::merge(&self.vars, &vars::var_list(names));
        self.embed(&merged)
    }

    /// Drops variables that do not occur.
    pub fn trimmed(&self) -> Self {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let keep: Vec<usize> = used.iter().map(|u| self.var_index(u).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MPoly {
            vars: used.into(),
            terms,
        }
    }

    pub(crate) fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.vars[..] == b.vars[..] {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let merged = vars::merge(&a.vars, &b.vars);
        let ca = if merged.len() == a.vars.len() {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.embed(&merged))
        };
        let cb = if merged.len() == b.vars.len() && b.vars[..] == merged[..] {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.embed(&merged))
        };
        (ca, cb)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_in(&self.vars);
        }
        let mut out = Self::zero_in(&self.vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    /// Multiplies by a single term `c * m` (monomial over our variables).
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (k, a) in &self.terms {
            out.add_term(k.mul(m), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant_in(C::one(), &self.vars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn try_pow(&self, n: i64) -> Result<Self, PolyError> {
        if n < 0 {
            return Err(PolyError::NegativeExponent(n));
        }
        let e = u32::try_from(n).map_err(|_| PolyError::NegativeExponent(n))?;
        Ok(self.pow(e))
    }

    /// Formal partial derivative with respect to a declared variable.
    pub fn derive(&self, name: &str) -> Result<Self, PolyError> {
        let i = self
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.derive_index(i))
    }

    /// Partial derivative; a variable we do not carry gives zero.
    pub fn partial(&self, name: &str) -> Self {
        match self.var_index(name) {
            Some(i) => self.derive_index(i),
            None => Self::zero_in(&self.vars),
        }
    }

    fn derive_index(&self, i: usize) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c.clone() * C::from_i64(k as i64));
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::<D>::zero_in(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Evaluates at values given in the order of `self.vars()`.
    pub fn eval<T: Scalar>(&self, values: &[T], conv: impl Fn(&C) -> T) -> T {
        assert_eq!(values.len(), self.vars.len(), "evaluation point arity");
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = conv(c);
            for (k, v) in m.0.iter().zip(values) {
                for _ in 0..*k {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluates at named values; every variable that occurs must be given.
    pub fn eval_named<T: Scalar>(&self, values: &[(&str, T)], conv: impl Fn(&C) -> T) -> T {
        let point: Vec<T> = self
            .vars
            .iter()
            .map(|v| {
                values
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, t)| t.clone())
                    .unwrap_or_else(T::zero)
            })
            .collect();
        self.eval(&point, conv)
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute(&self, name: &str, value: &MPoly<C>) -> Self {
        self.substitute_many(&[(name, value.clone())])
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_many(&self, subs: &[(&str, MPoly<C>)]) -> Self {
        let mut idx = Vec::new();
        for (name, val) in subs {
            if let Some(i) = self.var_index(name) {
                idx.push((i, val));
            }
        }
        if idx.is_empty() {
            return self.clone();
        }
        let mut target = self.vars.clone();
        for (_, val) in &idx {
            target = vars::merge(&target, val.vars());
        }
        let vals: Vec<(usize, MPoly<C>)> =
            idx.iter().map(|(i, v)| (*i, v.embed(&target))).collect();
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).unwrap())
            .collect();
        let mut powers: Vec<Vec<MPoly<C>>> = vec![Vec::new(); vals.len()];
        let mut out = Self::zero_in(&target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (vi, &k) in m.0.iter().enumerate() {
                if k > 0 && !vals.iter().any(|(i, _)| *i == vi) {
                    e[pos[vi]] = k;
                }
            }
            let mut term = Self::zero_in(&target);
            term.add_term(Monomial(e), c.clone());
            for (j, (i, val)) in vals.iter().enumerate() {
                let k = m.0[*i] as usize;
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= k {
                    let next = match cache.last() {
                        None => Self::constant_in(C::one(), &target),
                        Some(last) => last * val,
                    };
                    cache.push(next);
                }
                term = &term * &cache[k];
            }
            out = &out + &term;
        }
        out
    }

    /// Renames variables; the new names are re-sorted canonically.
    pub fn rename(&self, map: &[(&str, &str)]) -> Self {
        let names: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                map.iter()
                    .find(|(from, _)| from == v)
                    .map_or_else(|| v.clone(), |(_, to)| to.to_string())
            })
            .collect();
        let terms = self.terms.iter().map(|(m, c)| (m.0.clone(), c.clone()));
        MPoly::from_terms(&names, terms)
    }

    /// Sum of coefficient moduli; a scale for residual tests.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).sum()
    }
}

impl<C: Scalar> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = MPoly::aligned(self, other);
        a.terms.len() == b.terms.len()
            && a.terms
                .iter()
                .zip(b.terms.iter())
                .all(|((ma, ca), (mb, cb))| ma == mb && ca == cb)
    }
}

impl<C: Scalar> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            for (v, k) in self.vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => write!(f, "*{}", v)?,
                    _ => write!(f, "*{}^{}", v, k)?,
                }
            }
        }
        Ok(())
    }
}

/// Canonical text: graded-lex descending, explicit signs, `^` powers and
/// `*` between factors; `parse` in the CLI reads it back exactly.
impl fmt::Display for MPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(abs.to_string());
            }
            for (v, k) in self.vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{}^{}", v, k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Scalar> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Scalar> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

impl<C: Scalar> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        let (a, b) = MPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        let (a, b) = MPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        let (a, b) = MPoly::aligned(self, rhs);
        let mut out = MPoly::zero_in(&a.vars);
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Scalar> $tr<MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: MPoly<C>) -> MPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: &MPoly<C>) -> MPoly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Scalar> $tr<MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: MPoly<C>) -> MPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Zero for MPoly<C> {
    fn zero() -> Self {
        MPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for MPoly<C> {
    fn one() -> Self {
        MPoly::one()
    }
}
