//! Deformations `F_t = z - H_t` over the `t`-quotient ring and the
//! identities their inverses satisfy.
//!
//! A `t`-derivative of a value known to `t`-order `K` is only known to
//! order `K - 1`, so every identity involving `∂/∂t` is compared one order
//! lower than its inputs.

mod checks;
mod tseries;

pub use checks::*;
pub use tseries::{
    divide_by_t, evaluate_at, from_t_coefficients, lift_all, lift_constant, lower_all, lower_map,
    lower_to, t_coefficient, t_derivative, TSeries,
};

use crate::error::{Error, Result};
use crate::freealg::{Derivation, FormalMap, NCSeries};
use crate::inversion::{fixed_point_m, terms_needed, NSequence};
use crate::rings::{Ring, TQuotient};

/// `F_t = z - H_t` together with its inverse `G_t = z + M_t`.
#[derive(Debug, Clone)]
pub struct DeformedMap<R: Ring> {
    h_t: Vec<TSeries<R>>,
    m_t: Vec<TSeries<R>>,
    f_t: FormalMap<TQuotient<R>>,
    g_t: FormalMap<TQuotient<R>>,
}

impl<R: Ring> DeformedMap<R> {
    pub fn h_t(&self) -> &[TSeries<R>] {
        &self.h_t
    }

    pub fn m_t(&self) -> &[TSeries<R>] {
        &self.m_t
    }

    pub fn f_t(&self) -> &FormalMap<TQuotient<R>> {
        &self.f_t
    }

    pub fn g_t(&self) -> &FormalMap<TQuotient<R>> {
        &self.g_t
    }

    pub fn quotient(&self) -> &TQuotient<R> {
        self.h_t[0].ring()
    }

    /// The `t`-truncation order `K`.
    pub fn t_order(&self) -> usize {
        self.quotient().order()
    }

    pub fn degree(&self) -> usize {
        self.h_t[0].degree()
    }

    pub fn arity(&self) -> usize {
        self.h_t.len()
    }

    /// `h(t) = [∂M_t/∂t (F_t) ∂/∂z]`, at order `K - 1`.
    pub fn h_derivation(&self) -> Result<Derivation<TQuotient<R>>> {
        let low = self.quotient().lowered();
        let dm: Vec<_> = self.m_t.iter().map(t_derivative).collect();
        Derivation::new(lower_map(&self.f_t, &low).substitute_all(&dm)?)
    }

    /// `m(t) = [∂H_t/∂t (G_t) ∂/∂z]`, at order `K - 1`.
    pub fn m_derivation(&self) -> Result<Derivation<TQuotient<R>>> {
        let low = self.quotient().lowered();
        let dh: Vec<_> = self.h_t.iter().map(t_derivative).collect();
        Derivation::new(lower_map(&self.g_t, &low).substitute_all(&dh)?)
    }
}

/// Inverts `z - H_t` by fixed-point iteration over the `t`-quotient.
pub fn deform_invert<R: Ring>(h_t: Vec<TSeries<R>>) -> Result<DeformedMap<R>> {
    if h_t.first().is_some_and(|h| h.ring().order() == 0) {
        return Err(Error::InvalidArgument(
            "a deformation needs t-order K >= 1".into(),
        ));
    }
    let m_t = fixed_point_m(&h_t)?;
    let f_t = FormalMap::from_h(h_t.clone())?;
    let g_t = FormalMap::from_m(m_t.clone())?;
    Ok(DeformedMap { h_t, m_t, f_t, g_t })
}

/// The deformation `F_t = z - tH` with `G_t = z + tN_t`.
///
/// The inverse is computed to `t`-order `K + 1` so that `N_t = M_t / t`
/// is known to order `K`.
#[derive(Debug, Clone)]
pub struct SpecialDeformation<R: Ring> {
    h: Vec<NCSeries<R>>,
    map: DeformedMap<R>,
    n_t: Vec<TSeries<R>>,
}

pub fn special_deformation<R: Ring>(h: &[NCSeries<R>], k: usize) -> Result<SpecialDeformation<R>> {
    FormalMap::from_h(h.to_vec())?;
    let base = h[0].ring().clone();
    let tq = TQuotient::new(base, k + 1);
    let h_t = h
        .iter()
        .map(|s| s.map_coeffs(tq.clone(), |c| tq.monomial(c.clone(), 1)))
        .collect();
    let map = deform_invert(h_t)?;
    let n_t = map
        .m_t()
        .iter()
        .map(divide_by_t)
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecialDeformation {
        h: h.to_vec(),
        map,
        n_t,
    })
}

impl<R: Ring> SpecialDeformation<R> {
    pub fn h(&self) -> &[NCSeries<R>] {
        &self.h
    }

    /// The underlying deformation, at `t`-order `K + 1`.
    pub fn map(&self) -> &DeformedMap<R> {
        &self.map
    }

    /// `N_t`, at `t`-order `K`.
    pub fn n_t(&self) -> &[TSeries<R>] {
        &self.n_t
    }

    pub fn t_order(&self) -> usize {
        self.n_t[0].ring().order()
    }

    /// `N_[m]`, the coefficient of `t^(m-1)` in `N_t`, for `m <= K + 1`.
    pub fn n_m(&self, m: usize) -> Vec<NCSeries<R>> {
        self.n_t.iter().map(|s| t_coefficient(s, m - 1)).collect()
    }

    pub fn n_sequence(&self) -> Result<NSequence<R>> {
        NSequence::from_terms((1..=self.t_order() + 1).map(|m| self.n_m(m)).collect())
    }
}

/// `N_[1..=D-1]` read off the deformation; valid in every characteristic.
pub fn n_seq_via_deformation<R: Ring>(h: &[NCSeries<R>]) -> Result<NSequence<R>> {
    let d = h
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty map".into()))?
        .degree();
    special_deformation(h, terms_needed(d) - 1)?.n_sequence()
}
