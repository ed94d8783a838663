//! The abelianization quotient and the commutative specializations of the
//! C-sequence and the `N_t` equation.

mod poly;

pub use poly::{CommPoly, CommPolyJson, CommTermJson};

use crate::deformation::{special_deformation, t_coefficient};
use crate::error::{Error, Result};
use crate::freealg::NCSeries;
use crate::rings::{Ring, TQuotient};

/// Image of `a` in the commutative quotient: each word goes to its
/// multidegree.
pub fn abelianize<R: Ring>(a: &NCSeries<R>) -> CommPoly<R> {
    let mut out = CommPoly::zero(a.ring().clone(), a.arity(), a.degree());
    for (w, c) in a.terms() {
        out.add_term(w.multidegree(a.arity()), c.clone());
    }
    out
}

pub fn abelianize_all<R: Ring>(us: &[NCSeries<R>]) -> Vec<CommPoly<R>> {
    us.iter().map(abelianize).collect()
}

/// `(JP) · v`, whose `i`-th entry is `Σ_j ∂P_i/∂x_j v_j`.
pub fn jacobian_apply<R: Ring>(p: &[CommPoly<R>], v: &[CommPoly<R>]) -> Result<Vec<CommPoly<R>>> {
    if p.len() != v.len() {
        return Err(Error::ArityMismatch {
            left: p.len(),
            right: v.len(),
        });
    }
    p.iter()
        .map(|pi| {
            let mut acc = pi.zero_like();
            for (j, vj) in v.iter().enumerate() {
                pi.check_compatible(vj)?;
                acc = &acc + &(&pi.partial(j) * vj);
            }
            Ok(acc)
        })
        .collect()
}

fn check_order_two<R: Ring>(h: &[CommPoly<R>]) -> Result<()> {
    for (i, p) in h.iter().enumerate() {
        if let Some(o) = p.terms().map(|(e, _)| e.iter().sum::<u32>() as usize).min() {
            if o < 2 {
                return Err(Error::OrderTooLow {
                    component: i + 1,
                    order: o,
                    required: 2,
                });
            }
        }
    }
    Ok(())
}

/// `(JH)^(m-1) · H` for `m >= 1`.
pub fn comm_jacobian_power<R: Ring>(h: &[CommPoly<R>], m: usize) -> Result<Vec<CommPoly<R>>> {
    if m == 0 {
        return Err(Error::InvalidArgument("the power index starts at 1".into()));
    }
    check_order_two(h)?;
    let mut v = h.to_vec();
    for _ in 1..m {
        v = jacobian_apply(h, &v)?;
    }
    Ok(v)
}

/// Solves `z + tN_t = (z - tH)⁻¹` in the commutative quotient and checks
/// `∂N_t/∂t = (JN_t) · N_t` at `t`-order `K - 1` together with `N_0 = H`.
pub fn comm_pde_check<R: Ring>(h: &[CommPoly<R>], k: usize) -> Result<bool> {
    check_order_two(h)?;
    if k == 0 {
        return Err(Error::InvalidArgument("t-order must be at least 1".into()));
    }
    let first = h
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty map".into()))?;
    let (n, d) = (first.arity(), first.degree());
    let base = first.ring().clone();
    let tq = TQuotient::new(base.clone(), k + 1);
    let t_h: Vec<_> = h
        .iter()
        .map(|p| p.map_coeffs(tq.clone(), |c| tq.monomial(c.clone(), 1)))
        .collect();
    let z: Vec<_> = (0..n).map(|i| CommPoly::var(tq.clone(), n, d, i)).collect();
    let mut m: Vec<_> = t_h.iter().map(CommPoly::zero_like).collect();
    for _ in 0..d + k + 2 {
        let g: Vec<_> = z.iter().zip(&m).map(|(a, b)| a + b).collect();
        let next = t_h
            .iter()
            .map(|p| p.compose(&g))
            .collect::<Result<Vec<_>>>()?;
        if next == m {
            break;
        }
        m = next;
    }
    let low = TQuotient::new(base.clone(), k);
    let n_t = m
        .iter()
        .map(|p| {
            let mut out = CommPoly::zero(low.clone(), n, d);
            for (e, c) in p.terms() {
                out.add_term(e.clone(), tq.divide_by_t(c)?);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let boundary = n_t
        .iter()
        .zip(h)
        .all(|(nt, hi)| nt.map_coeffs(base.clone(), |c| c[0].clone()) == *hi);
    let lower = low.lowered();
    let n_low: Vec<_> = n_t
        .iter()
        .map(|p| p.map_coeffs(lower.clone(), |c| low.truncate_into(c, &lower)))
        .collect();
    let lhs: Vec<_> = n_t
        .iter()
        .map(|p| {
            p.map_coeffs(lower.clone(), |c| {
                low.truncate_into(&low.t_derivative(c), &lower)
            })
        })
        .collect();
    Ok(boundary && lhs == jacobian_apply(&n_low, &n_low)?)
}

/// The commutative equation checked on the abelianized noncommutative `N_t`.
pub fn abelianized_nt_satisfies_comm_pde<R: Ring>(h: &[NCSeries<R>], k: usize) -> Result<bool> {
    let sd = special_deformation(h, k)?;
    let n_t = abelianize_all(sd.n_t());
    let tq = sd.n_t()[0].ring().clone();
    let lower = tq.lowered();
    let n_low: Vec<_> = n_t
        .iter()
        .map(|p| p.map_coeffs(lower.clone(), |c| tq.truncate_into(c, &lower)))
        .collect();
    let lhs: Vec<_> = n_t
        .iter()
        .map(|p| {
            p.map_coeffs(lower.clone(), |c| {
                tq.truncate_into(&tq.t_derivative(c), &lower)
            })
        })
        .collect();
    let boundary = sd
        .n_t()
        .iter()
        .zip(h)
        .all(|(nt, hi)| abelianize(&t_coefficient(nt, 0)) == abelianize(hi));
    Ok(boundary && lhs == jacobian_apply(&n_low, &n_low)?)
}

/// `abelianize(C_m) = (JH_ab)^(m-1) H_ab` for `m = 1..=m_max`.
pub fn c_seq_abelianizes<R: Ring>(h: &[NCSeries<R>], m_max: usize) -> Result<bool> {
    let cs = crate::inversion::c_seq(h, m_max)?;
    let h_ab = abelianize_all(h);
    for (i, c) in cs.iter().enumerate() {
        if abelianize_all(c) != comm_jacobian_power(&h_ab, i + 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}
