use super::{MPoly, PolyError};
use crate::scalar::Exact;

/// Exact quotient `p / q`, or `None` when `q` does not divide `p`.
///
/// Reduces the graded-lex leading term of the running remainder against
/// that of `q`; for a single divisor the remainder is zero exactly when `q`
/// divides `p`, so the first irreducible leading term settles the answer.
pub fn exact_div<C: Exact>(p: &MPoly<C>, q: &MPoly<C>) -> Result<Option<MPoly<C>>, PolyError> {
    if q.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let (p, q) = MPoly::aligned(p, q);
    let (lm_q, lc_q) = {
        let (m, c) = q.leading_term().expect("nonzero divisor");
        (m.clone(), c.clone())
    };
    let mut rem = p.into_owned();
    let mut quot = MPoly::zero_in(q.vars());
    while let Some((m, c)) = rem.leading_term() {
        let Some(shift) = m.checked_div(&lm_q) else {
            return Ok(None);
        };
        let f = c.clone() / lc_q.clone();
        rem.sub_scaled_shift(&q, &shift, &f);
        quot.push_term(shift, f);
    }
    Ok(Some(quot))
}
