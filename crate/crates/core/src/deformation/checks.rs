//! Executable forms of the chain rules and deformation identities.
//!
//! Each check computes both sides independently and compares them exactly.
//! Checks that differentiate in `t` compare at `t`-order `K - 1`; checks
//! involving Jacobian entries, whose derivation components have constant
//! terms, compare at `z`-degree `D - 1`.

use super::tseries::*;
use super::{DeformedMap, SpecialDeformation};
use crate::error::Result;
use crate::freealg::{
    induced_action_on, star_action, Derivation, FormalMap, MapForm, NCSeries, SeriesMatrix,
};
use crate::inversion::{c_seq, convolution, verify_inverse, NSequence};
use crate::rings::{Ring, TQuotient};

fn truncated_eq<R: Ring>(a: &SeriesMatrix<R>, b: &SeriesMatrix<R>, degree: usize) -> bool {
    a.truncate(degree) == b.truncate(degree)
}

/// `δ(u(F)) = ([(δF)(F⁻¹) ∂/∂z] u)(F)`, and `(F⁻¹)_* δ` evaluated from its
/// definition agrees with `[(δF)(F⁻¹) ∂/∂z]` on `u`.
///
/// `g` is the inverse of `f`; `δ` should have components of order `>= 1`
/// so that both sides are exact at the truncation.
pub fn chain_rule_holds<R: Ring>(
    f: &FormalMap<R>,
    g: &FormalMap<R>,
    delta: &Derivation<R>,
    u: &NCSeries<R>,
) -> Result<bool> {
    let lhs = delta.apply(&f.substitute(u)?)?;
    let pushed = star_action(f, g, delta)?;
    let rhs = f.substitute(&pushed.apply(u)?)?;
    let by_definition = induced_action_on(g, f, delta, u)?;
    Ok(lhs == rhs && by_definition == pushed.apply(u)?)
}

/// `[J̃F(G) ∂/∂z] G = I = [J̃G(F) ∂/∂z] F`, compared at degree `D - 1`.
pub fn jacobian_chain_rule_holds<R: Ring>(f: &FormalMap<R>, g: &FormalMap<R>) -> Result<bool> {
    let d = f.degree();
    if d == 0 {
        return Ok(true);
    }
    let id = SeriesMatrix::identity(f.ring().clone(), f.arity(), d);
    let one_way = SeriesMatrix::jacobian_tilde(f.components())?
        .compose(g)?
        .apply_rows(g.components())?;
    let other_way = SeriesMatrix::jacobian_tilde(g.components())?
        .compose(f)?
        .apply_rows(f.components())?;
    Ok(truncated_eq(&one_way, &id, d - 1) && truncated_eq(&other_way, &id, d - 1))
}

/// `J̃(U(F)) = ([J̃F(F⁻¹) ∂/∂z]^τ U)(F)`, compared at degree `D - 1`.
pub fn matrix_chain_rule_holds<R: Ring>(
    f: &FormalMap<R>,
    g: &FormalMap<R>,
    us: &[NCSeries<R>],
) -> Result<bool> {
    let d = f.degree();
    if d == 0 {
        return Ok(true);
    }
    let lhs = SeriesMatrix::jacobian_tilde(&f.substitute_all(us)?)?;
    let rhs = SeriesMatrix::jacobian_tilde(f.components())?
        .compose(g)?
        .apply_rows(us)?
        .compose(f)?;
    Ok(truncated_eq(&lhs, &rhs, d - 1))
}

/// `∂u_t(F_t)/∂t = (∂u_t/∂t)(F_t) + ([∂F_t/∂t (F_t⁻¹) ∂/∂z] u_t)(F_t)`.
pub fn t_chain_rule_holds<R: Ring>(
    f_t: &FormalMap<TQuotient<R>>,
    g_t: &FormalMap<TQuotient<R>>,
    u_t: &TSeries<R>,
) -> Result<bool> {
    let low = f_t.ring().lowered();
    let f_low = lower_map(f_t, &low);
    let g_low = lower_map(g_t, &low);
    let lhs = t_derivative(&f_t.substitute(u_t)?);
    let df: Vec<_> = f_t.components().iter().map(t_derivative).collect();
    let delta = Derivation::new(g_low.substitute_all(&df)?)?;
    let u_low = lower_to(u_t, &low);
    let rhs = &f_low.substitute(&t_derivative(u_t))? + &f_low.substitute(&delta.apply(&u_low)?)?;
    Ok(lhs == rhs)
}

/// The four identities relating `H_t` and `M_t`:
/// `M_t = H_t(G_t)`, `H_t = M_t(F_t)`,
/// `∂H_t/∂t = h(t) F_t` and `∂M_t/∂t = m(t) G_t`.
pub fn deformation_identities<R: Ring>(d: &DeformedMap<R>) -> Result<[bool; 4]> {
    let low = d.quotient().lowered();
    let e1 = d.g_t().substitute_all(d.h_t())? == d.m_t();
    let e2 = d.f_t().substitute_all(d.m_t())? == d.h_t();
    let dh: Vec<_> = d.h_t().iter().map(t_derivative).collect();
    let dm: Vec<_> = d.m_t().iter().map(t_derivative).collect();
    let e3 = d
        .h_derivation()?
        .apply_all(lower_map(d.f_t(), &low).components())?
        == dh;
    let e4 = d
        .m_derivation()?
        .apply_all(lower_map(d.g_t(), &low).components())?
        == dm;
    Ok([e1, e2, e3, e4])
}

/// `(G_t)_* h(t) = m(t)` and `(F_t)_* m(t) = h(t)`, each also checked on
/// coordinates through the definition of the induced action.
pub fn induced_derivation_identities<R: Ring>(d: &DeformedMap<R>) -> Result<[bool; 2]> {
    let low = d.quotient().lowered();
    let f = lower_map(d.f_t(), &low);
    let g = lower_map(d.g_t(), &low);
    let h = d.h_derivation()?;
    let m = d.m_derivation()?;
    let coords = FormalMap::identity(low.clone(), d.arity(), d.degree());
    let mut e1 = star_action(&f, &g, &h)? == m;
    let mut e2 = star_action(&g, &f, &m)? == h;
    for (i, z) in coords.components().iter().enumerate() {
        e1 &= induced_action_on(&g, &f, &h, z)? == m.components()[i];
        e2 &= induced_action_on(&f, &g, &m, z)? == h.components()[i];
    }
    Ok([e1, e2])
}

/// For `u` over the base ring:
/// `∂u(F_t)/∂t = -(m(t)u)(F_t)`, `= -h(t) u(F_t)`,
/// `∂u(G_t)/∂t = (h(t)u)(G_t)`, `= m(t) u(G_t)`.
///
/// The second and fourth are the flow equations characterizing `u(F_t)`
/// and `u(G_t)`.
pub fn flow_identities<R: Ring>(d: &DeformedMap<R>, u: &NCSeries<R>) -> Result<[bool; 4]> {
    let tq = d.quotient();
    let low = tq.lowered();
    let f = lower_map(d.f_t(), &low);
    let g = lower_map(d.g_t(), &low);
    let h = d.h_derivation()?;
    let m = d.m_derivation()?;
    let u_t = lift_constant(u, tq);
    let u_low = lift_constant(u, &low);

    let uf = d.f_t().substitute(&u_t)?;
    let duf = t_derivative(&uf);
    let a1 = duf == -&f.substitute(&m.apply(&u_low)?)?;
    let a2 = duf == -&h.apply(&lower_to(&uf, &low))?;

    let ug = d.g_t().substitute(&u_t)?;
    let dug = t_derivative(&ug);
    let b1 = dug == g.substitute(&h.apply(&u_low)?)?;
    let b2 = dug == m.apply(&lower_to(&ug, &low))?;
    Ok([a1, a2, b1, b2])
}

/// `∂N_t/∂t = [N_t ∂/∂z] N_t` with `N_(t=0) = H`, as two results.
pub fn nt_pde_holds<R: Ring>(n_t: &[TSeries<R>], h: &[NCSeries<R>]) -> Result<[bool; 2]> {
    let boundary = n_t.iter().zip(h).all(|(n, hi)| t_coefficient(n, 0) == *hi);
    let low = n_t[0].ring().lowered();
    let n_low = lower_all(n_t, &low);
    let lhs: Vec<_> = n_t.iter().map(t_derivative).collect();
    let rhs = Derivation::new(n_low.clone())?.apply_all(&n_low)?;
    Ok([lhs == rhs, boundary])
}

/// `m(t) = [N_t ∂/∂z]`, `h(t) = Σ t^(m-1) [C_m ∂/∂z]` and `N_t(F_t) = H`
/// for the special deformation.
pub fn special_deformation_identities<R: Ring>(sd: &SpecialDeformation<R>) -> Result<[bool; 3]> {
    let d = sd.map();
    let m_matches = d.m_derivation()?.components() == sd.n_t();
    let h = d.h_derivation()?;
    let k = sd.t_order();
    let cs = c_seq(sd.h(), k + 1)?;
    let h_matches = (0..=k).all(|j| {
        h.components()
            .iter()
            .zip(&cs[j])
            .all(|(hc, c)| t_coefficient(hc, j) == *c)
    });
    let low = sd.n_t()[0].ring().clone();
    let f = lower_map(d.f_t(), &low);
    let h_low = lift_all(sd.h(), &low);
    let pulls_back = f.substitute_all(sd.n_t())? == h_low;
    Ok([m_matches, h_matches, pulls_back])
}

/// `U_t = u(z + tN_t)` satisfies `∂U_t/∂t = [N_t ∂/∂z] U_t` and
/// `U_(t=0) = u`.
pub fn pullback_pde_holds<R: Ring>(sd: &SpecialDeformation<R>, u: &NCSeries<R>) -> Result<bool> {
    let d = sd.map();
    let u_t = d.g_t().substitute(&lift_constant(u, d.quotient()))?;
    let lhs = t_derivative(&u_t);
    let low = sd.n_t()[0].ring().clone();
    let rhs = Derivation::new(sd.n_t().to_vec())?.apply(&lower_to(&u_t, &low))?;
    Ok(lhs == rhs && t_coefficient(&u_t, 0) == *u)
}

/// `(m - 1) N_[m] = Σ_{k+l=m} [N_[k] ∂/∂z] N_[l]` for every stored `m >= 2`.
pub fn recurrence_holds<R: Ring>(seq: &NSequence<R>) -> Result<bool> {
    for m in 2..=seq.len() {
        let conv = convolution(seq, m)?;
        let scaled: Vec<_> = seq
            .get(m)
            .iter()
            .map(|n| n.mul_by_int(m as i64 - 1))
            .collect();
        if conv != scaled {
            return Ok(false);
        }
    }
    Ok(true)
}

/// In characteristic `p`, `Σ_{k+l=m} [N_[k] ∂/∂z] N_[l] = 0` whenever
/// `m ≡ 1 (mod p)`. Returns the verdict and how many such `m` were checked.
pub fn charp_vanishing_holds<R: Ring>(seq: &NSequence<R>) -> Result<(bool, usize)> {
    let p = seq.ring().characteristic() as usize;
    if p == 0 {
        return Ok((true, 0));
    }
    let mut checked = 0;
    for m in (p + 1..=seq.len()).step_by(p) {
        checked += 1;
        if convolution(seq, m)?.iter().any(|c| !c.is_zero()) {
            return Ok((false, checked));
        }
    }
    Ok((true, checked))
}

/// `z - s0 N_(t0)` and `z + s0 N_(t0+s0)` are mutually inverse, and the
/// first equals `F_(t0+s0) ∘ G_(t0)`.
pub fn inverse_family_holds<R: Ring>(
    seq: &NSequence<R>,
    t0: &R::Elem,
    s0: &R::Elem,
) -> Result<bool> {
    let ring = seq.ring().clone();
    let n_at = |t: &R::Elem| -> Vec<NCSeries<R>> {
        let mut acc: Vec<NCSeries<R>> = seq.h().iter().map(NCSeries::zero_like).collect();
        let mut power = ring.one();
        for term in seq.terms() {
            for (a, n) in acc.iter_mut().zip(term) {
                *a = &*a + &n.scale(&power);
            }
            power = ring.mul(&power, t);
        }
        acc
    };
    let scaled =
        |v: Vec<NCSeries<R>>| -> Vec<NCSeries<R>> { v.iter().map(|s| s.scale(s0)).collect() };
    let t1 = ring.add(t0, s0);
    let u = FormalMap::from_h(scaled(n_at(t0)))?;
    let v = FormalMap::from_m(scaled(n_at(&t1)))?;
    let inverse = verify_inverse(&u, &v)?.verified();
    let f_t1 = FormalMap::from_h(seq.h().iter().map(|h| h.scale(&t1)).collect())?;
    let g_t0 = seq.assemble(t0);
    let factored = FormalMap::with_form(f_t1.compose(&g_t0)?.into_components(), MapForm::FForm)?;
    Ok(inverse && factored.components() == u.components())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{deform_invert, special_deformation};
    use crate::inversion::{invert_fixed_point, n_seq_recurrent};
    use crate::rings::Rationals;

    fn xy(d: usize) -> (NCSeries<Rationals>, NCSeries<Rationals>) {
        (
            NCSeries::var(Rationals, 2, d, 0),
            NCSeries::var(Rationals, 2, d, 1),
        )
    }

    fn sample_h(d: usize) -> Vec<NCSeries<Rationals>> {
        let (x, y) = xy(d);
        vec![
            &(&x * &y) - &(&y * &x).mul_by_int(2),
            &(&(&y * &x) * &x) + &(&x * &x),
        ]
    }

    #[test]
    fn chain_rules_on_sample_map() {
        let d = 5;
        let h = sample_h(d);
        let f = FormalMap::from_h(h.clone()).unwrap();
        let g = invert_fixed_point(&h).unwrap();
        let (x, y) = xy(d);
        let delta = Derivation::new(vec![&y + &(&x * &x), &(&x * &y) * &y]).unwrap();
        let u = &(&x * &y) + &(&(&y * &y) * &x);
        assert!(chain_rule_holds(&f, &g, &delta, &u).unwrap());
        assert!(jacobian_chain_rule_holds(&f, &g).unwrap());
        assert!(matrix_chain_rule_holds(&f, &g, &[u.clone(), &x * &y]).unwrap());
    }

    #[test]
    fn deformation_of_sample_map() {
        let (d, k) = (5, 3);
        let tq = TQuotient::new(Rationals, k);
        let h = sample_h(d);
        let h_t = vec![
            from_t_coefficients(&tq, &[h[0].clone(), h[1].zero_like(), h[1].clone()]),
            from_t_coefficients(&tq, &[h[1].zero_like(), h[0].mul_by_int(3)]),
        ];
        let dm = deform_invert(h_t).unwrap();
        assert_eq!(deformation_identities(&dm).unwrap(), [true; 4]);
        assert_eq!(induced_derivation_identities(&dm).unwrap(), [true; 2]);
        let (x, y) = xy(d);
        assert_eq!(flow_identities(&dm, &(&x * &y)).unwrap(), [true; 4]);
        assert_eq!(
            flow_identities(&dm, &NCSeries::one(Rationals, 2, d)).unwrap(),
            [true; 4]
        );
        let u_t = from_t_coefficients(&tq, &[&x * &y, y.clone(), &x * &x]);
        assert!(t_chain_rule_holds(dm.f_t(), dm.g_t(), &u_t).unwrap());
    }

    #[test]
    fn special_deformation_of_sample_map() {
        let d = 6;
        let h = sample_h(d);
        let sd = special_deformation(&h, 4).unwrap();
        assert_eq!(nt_pde_holds(sd.n_t(), &h).unwrap(), [true; 2]);
        assert_eq!(special_deformation_identities(&sd).unwrap(), [true; 3]);
        let (x, y) = xy(d);
        assert!(pullback_pde_holds(&sd, &(&(&x * &y) + &y)).unwrap());
        let seq = sd.n_sequence().unwrap();
        assert_eq!(seq, n_seq_recurrent(&h).unwrap());
        assert!(recurrence_holds(&seq).unwrap());
    }

    #[test]
    fn perturbed_nt_fails_the_pde() {
        let d = 5;
        let h = sample_h(d);
        let sd = special_deformation(&h, 3).unwrap();
        let mut n_t = sd.n_t().to_vec();
        let tq = n_t[0].ring().clone();
        let (x, y) = xy(d);
        let bump = from_t_coefficients(&tq, &[x.zero_like(), x.zero_like(), &(&x * &y) * &y]);
        n_t[0] = &n_t[0] + &bump;
        assert_eq!(nt_pde_holds(&n_t, &h).unwrap(), [false, true]);
    }

    #[test]
    fn inverse_family_at_rational_points() {
        let h = sample_h(6);
        let seq = n_seq_recurrent(&h).unwrap();
        let q = |s: &str| Rationals.parse(s).unwrap();
        assert!(inverse_family_holds(&seq, &q("1/3"), &q("1/2")).unwrap());
        assert!(inverse_family_holds(&seq, &q("0"), &q("1")).unwrap());
        assert!(inverse_family_holds(&seq, &q("-2"), &q("0")).unwrap());
    }
}
