//! Series over `R[t]/(t^(K+1))` and the operations on their `t`-structure.

use crate::error::{Error, Result};
use crate::freealg::{FormalMap, NCSeries};
use crate::rings::{Ring, TQuotient};

pub type TSeries<R> = NCSeries<TQuotient<R>>;

/// `s` viewed as constant in `t`.
pub fn lift_constant<R: Ring>(s: &NCSeries<R>, tq: &TQuotient<R>) -> TSeries<R> {
    s.map_coeffs(tq.clone(), |c| tq.constant(c.clone()))
}

pub fn lift_all<R: Ring>(us: &[NCSeries<R>], tq: &TQuotient<R>) -> Vec<TSeries<R>> {
    us.iter().map(|u| lift_constant(u, tq)).collect()
}

/// `Σ_j t^j coeffs[j]`; coefficients past `K` are dropped.
pub fn from_t_coefficients<R: Ring>(tq: &TQuotient<R>, coeffs: &[NCSeries<R>]) -> TSeries<R> {
    let first = &coeffs[0];
    let mut out = NCSeries::zero(tq.clone(), first.arity(), first.degree());
    for (j, c) in coeffs.iter().enumerate().take(tq.order() + 1) {
        for (w, x) in c.terms() {
            out.add_term(w.clone(), tq.monomial(x.clone(), j));
        }
    }
    out
}

fn quotient<R: Ring>(s: &TSeries<R>) -> &TQuotient<R> {
    s.ring()
}

/// Coefficient of `t^j`.
pub fn t_coefficient<R: Ring>(s: &TSeries<R>, j: usize) -> NCSeries<R> {
    let tq = quotient(s);
    s.map_coeffs(tq.base().clone(), |v| v[j].clone())
}

/// `∂s/∂t` in the quotient one `t`-order lower, where it is exact.
pub fn t_derivative<R: Ring>(s: &TSeries<R>) -> TSeries<R> {
    let tq = quotient(s);
    let low = tq.lowered();
    s.map_coeffs(low.clone(), |v| tq.truncate_into(&tq.t_derivative(v), &low))
}

/// Drops `t`-coefficients down to the order of `target`.
pub fn lower_to<R: Ring>(s: &TSeries<R>, target: &TQuotient<R>) -> TSeries<R> {
    let tq = quotient(s);
    s.map_coeffs(target.clone(), |v| tq.truncate_into(v, target))
}

pub fn lower_all<R: Ring>(us: &[TSeries<R>], target: &TQuotient<R>) -> Vec<TSeries<R>> {
    us.iter().map(|u| lower_to(u, target)).collect()
}

pub fn lower_map<R: Ring>(
    map: &FormalMap<TQuotient<R>>,
    target: &TQuotient<R>,
) -> FormalMap<TQuotient<R>> {
    FormalMap::with_form(lower_all(map.components(), target), map.form())
        .expect("lowering keeps the linear part")
}

/// `s / t`, one `t`-order lower; fails unless the `t^0` part vanishes.
pub fn divide_by_t<R: Ring>(s: &TSeries<R>) -> Result<TSeries<R>> {
    let tq = quotient(s);
    let low = tq.lowered();
    let mut out = NCSeries::zero(low, s.arity(), s.degree());
    for (w, v) in s.terms() {
        out.add_term(w.clone(), tq.divide_by_t(v).map_err(Error::from)?);
    }
    Ok(out)
}

/// `s` at the scalar `t = t0`.
pub fn evaluate_at<R: Ring>(s: &TSeries<R>, t0: &R::Elem) -> NCSeries<R> {
    let tq = quotient(s);
    s.map_coeffs(tq.base().clone(), |v| tq.evaluate(v, t0))
}
