use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::nseq::{n_seq_recurrent, recurrent_step, start, terms_needed, NSequence};
use crate::error::{Error, Result};
use crate::freealg::{Composer, FormalMap, NCSeries};
use crate::rings::{IntPoly, IntPolyRing, LiftKey, PrimeField, Ring, TQuotient, VarId};

/// `N_[m] = -Σ_{l<m} [t^(m-l)] N_[l](z - tH)`, valid in every characteristic.
///
/// The substitution runs over `k[t]/(t^m)`; only the coefficient of
/// `t^(m-l)` is read from each `N_[l](z - tH)`.
pub fn alt_recurrent_step<R: Ring>(seq: &NSequence<R>, m: usize) -> Result<Vec<NCSeries<R>>> {
    if m < 2 || seq.len() < m - 1 {
        return Err(Error::InvalidArgument(format!(
            "step {m} needs N_[1..{}], have {}",
            m.saturating_sub(1),
            seq.len()
        )));
    }
    let base = seq.ring().clone();
    let tq = TQuotient::new(base.clone(), m - 1);
    let t_h = seq
        .h()
        .iter()
        .map(|s| s.map_coeffs(tq.clone(), |c| tq.monomial(c.clone(), 1)))
        .collect();
    let shifted = FormalMap::from_h(t_h)?;
    let mut composer = Composer::new(shifted.components())?;
    let mut acc: Vec<NCSeries<R>> = seq.h().iter().map(NCSeries::zero_like).collect();
    for l in 1..m {
        for (a, n) in acc.iter_mut().zip(seq.get(l)) {
            let lifted = n.map_coeffs(tq.clone(), |c| tq.constant(c.clone()));
            let image = composer.compose(&lifted)?;
            let part = image.map_coeffs(base.clone(), |v| v[m - l].clone());
            *a = &*a - &part;
        }
    }
    Ok(acc)
}

/// The N-sequence in characteristic `p > 0`: the recurrence where `m - 1`
/// is a unit, the residue formula at `m ≡ 1 (mod p)`.
pub fn invert_charp_direct<R: Ring>(h: &[NCSeries<R>]) -> Result<NSequence<R>> {
    let mut seq = start(h)?;
    let p = seq.ring().characteristic();
    if p == 0 {
        return Err(Error::Characteristic {
            engine: "charp-direct",
            characteristic: 0,
        });
    }
    for m in 2..=terms_needed(seq.degree()) {
        let next = if (m as u64 - 1).is_multiple_of(p) {
            alt_recurrent_step(&seq, m)?
        } else {
            recurrent_step(&seq, m)?
        };
        seq.push(next);
    }
    Ok(seq)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LiftOptions {
    /// Lift each coefficient to its least non-negative integer
    /// representative instead of a fresh variable.
    pub integer_representatives: bool,
}

/// `H` with its prime-field coefficients replaced by integer polynomials.
#[derive(Debug, Clone)]
pub struct LiftedMap {
    pub ring: IntPolyRing,
    pub h: Vec<NCSeries<IntPolyRing>>,
    pub assignment: BTreeMap<VarId, u64>,
}

/// Step 1: one commuting variable per nonzero coefficient of `H`, keyed by
/// (component, word).
pub fn lift_h(h: &[NCSeries<PrimeField>], options: LiftOptions) -> Result<LiftedMap> {
    FormalMap::from_h(h.to_vec())?;
    let mut ring = IntPolyRing::new();
    let mut assignment = BTreeMap::new();
    let mut ids = Vec::new();
    for (i, s) in h.iter().enumerate() {
        for (w, &c) in s.terms() {
            if options.integer_representatives {
                ids.push(None);
            } else {
                let id = ring.intern(LiftKey {
                    component: i,
                    word: w.letters().to_vec(),
                });
                assignment.insert(id, c);
                ids.push(Some(id));
            }
        }
    }
    let mut ids = ids.into_iter();
    let lifted = h
        .iter()
        .map(|s| {
            let mut out = NCSeries::zero(ring.clone(), s.arity(), s.degree());
            for (w, &c) in s.terms() {
                let coeff: IntPoly = match ids.next().expect("one id per term") {
                    Some(id) => ring.var(id),
                    None => ring.from_bigint(&BigInt::from(c)),
                };
                out.add_term(w.clone(), coeff);
            }
            out
        })
        .collect();
    Ok(LiftedMap {
        ring,
        h: lifted,
        assignment,
    })
}

/// Step 3: substitute the original coefficients and reduce mod `p`.
pub fn reduce_series(
    s: &NCSeries<IntPolyRing>,
    assignment: &BTreeMap<VarId, u64>,
    field: &PrimeField,
) -> Result<NCSeries<PrimeField>> {
    let mut out = NCSeries::zero(*field, s.arity(), s.degree());
    for (w, q) in s.terms() {
        out.add_term(w.clone(), s.ring().reduce_mod_p(q, assignment, field)?);
    }
    Ok(out)
}

/// The N-sequence over `GF(p)` through the characteristic-0 lift.
pub fn charp_lift_n_sequence(
    h: &[NCSeries<PrimeField>],
    options: LiftOptions,
) -> Result<NSequence<PrimeField>> {
    let field = *h
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty map".into()))?
        .ring();
    let lifted = lift_h(h, options)?;
    let seq = n_seq_recurrent(&lifted.h)?;
    let terms = seq
        .terms()
        .iter()
        .map(|term| {
            term.iter()
                .map(|s| reduce_series(s, &lifted.assignment, &field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    NSequence::from_terms(terms)
}

/// The inverse of `z - H` over `GF(p)` by lifting to `Z[A]`.
pub fn invert_charp_lift(
    h: &[NCSeries<PrimeField>],
    options: LiftOptions,
) -> Result<FormalMap<PrimeField>> {
    let seq = charp_lift_n_sequence(h, options)?;
    Ok(seq.assemble(&1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::invert_fixed_point;
    use crate::rings::Rationals;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn commutator_h<R: Ring>(ring: R, d: usize, scale: i64) -> Vec<NCSeries<R>> {
        let x = NCSeries::var(ring.clone(), 2, d, 0);
        let y = NCSeries::var(ring, 2, d, 1);
        vec![(&(&y * &x) - &(&x * &y)).mul_by_int(scale), y.zero_like()]
    }

    #[test]
    fn alt_step_matches_recurrence_in_char_zero() {
        let x = NCSeries::var(Rationals, 2, 6, 0);
        let y = NCSeries::var(Rationals, 2, 6, 1);
        let h = vec![
            &(&x * &y) - &(&y * &y).mul_by_int(2),
            &(&x * &x) + &(&y * &x),
        ];
        let seq = n_seq_recurrent(&h).unwrap();
        for m in 2..=seq.len() {
            let partial = NSequence::from_terms(seq.terms()[..m - 1].to_vec()).unwrap();
            assert_eq!(
                alt_recurrent_step(&partial, m).unwrap(),
                seq.get(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn four_times_commutator_over_gf5() {
        let field = gf(5);
        let d = 8;
        let h = commutator_h(field, d, 4);
        let direct = invert_charp_direct(&h).unwrap();
        let lifted = charp_lift_n_sequence(&h, LiftOptions::default()).unwrap();
        assert_eq!(direct, lifted);
        let mut ad = commutator_h(field, d, 1)[0].clone();
        let y = NCSeries::var(field, 2, d, 1);
        for m in 1..direct.len() {
            let expect = ad.scale(&field.pow(&4, m as u64));
            assert_eq!(direct.get(m)[0], expect, "m = {m}");
            ad = &(&y * &ad) - &(&ad * &y);
        }
        let g = direct.assemble(&1);
        assert_eq!(g, invert_fixed_point(&h).unwrap());
    }

    #[test]
    fn integer_representative_lift_agrees() {
        let field = gf(3);
        let x = NCSeries::var(field, 2, 6, 0);
        let y = NCSeries::var(field, 2, 6, 1);
        let h = vec![
            &(&x * &y).mul_by_int(2) + &(&y * &x),
            &(&x * &x) - &(&(&y * &x) * &y),
        ];
        let a = invert_charp_lift(&h, LiftOptions::default()).unwrap();
        let b = invert_charp_lift(
            &h,
            LiftOptions {
                integer_representatives: true,
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, invert_fixed_point(&h).unwrap());
    }

    #[test]
    fn zero_h_lifts_to_identity() {
        let field = gf(2);
        let z = NCSeries::var(field, 1, 5, 0);
        assert!(invert_charp_lift(&[z.zero_like()], LiftOptions::default())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn direct_engine_rejects_char_zero() {
        let h = commutator_h(Rationals, 4, 1);
        assert!(matches!(
            invert_charp_direct(&h),
            Err(Error::Characteristic {
                characteristic: 0,
                ..
            })
        ));
    }
}
