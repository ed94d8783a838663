use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::{check_order_two, Derivation, FormalMap, NCSeries};
use crate::rings::Ring;

/// The coefficients `N_[1], N_[2], …` of `N_t = Σ t^(m-1) N_[m]`, where
/// `z + t N_t` inverts `z - tH`.
///
/// Since `o(N_[m]) >= m + 1`, only `N_[1..=D-1]` can reach degree `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct NSequence<R: Ring> {
    terms: Vec<Vec<NCSeries<R>>>,
}

/// Number of N-sequence terms that can affect a degree-`D` truncation.
pub fn terms_needed(degree: usize) -> usize {
    degree.saturating_sub(1).max(1)
}

impl<R: Ring> NSequence<R> {
    /// Wraps precomputed terms; `terms[0]` is `N_[1]`.
    pub fn from_terms(terms: Vec<Vec<NCSeries<R>>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("empty N-sequence".into()));
        }
        for t in &terms[1..] {
            if t.len() != terms[0].len() {
                return Err(Error::ArityMismatch {
                    left: terms[0].len(),
                    right: t.len(),
                });
            }
            for (a, b) in terms[0].iter().zip(t) {
                a.check_compatible(b)?;
            }
        }
        Ok(Self { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `N_[m]`, 1-based.
    pub fn get(&self, m: usize) -> &[NCSeries<R>] {
        &self.terms[m - 1]
    }

    pub fn terms(&self) -> &[Vec<NCSeries<R>>] {
        &self.terms
    }

    pub fn h(&self) -> &[NCSeries<R>] {
        self.get(1)
    }

    pub fn arity(&self) -> usize {
        self.terms[0].len()
    }

    pub fn degree(&self) -> usize {
        self.terms[0][0].degree()
    }

    pub fn ring(&self) -> &R {
        self.terms[0][0].ring()
    }

    pub(crate) fn push(&mut self, term: Vec<NCSeries<R>>) {
        self.terms.push(term);
    }

    /// `z + Σ t0^m N_[m]`; at `t0 = 1` the inverse of `z - H`.
    pub fn assemble(&self, t0: &R::Elem) -> FormalMap<R> {
        let ring = self.ring();
        let mut m_part: Vec<NCSeries<R>> = self.terms[0].iter().map(NCSeries::zero_like).collect();
        let mut power = ring.one();
        for term in &self.terms {
            power = ring.mul(&power, t0);
            if ring.is_zero(&power) {
                break;
            }
            for (acc, n) in m_part.iter_mut().zip(term) {
                acc.add_assign_unchecked(&n.scale(&power));
            }
        }
        let id = FormalMap::identity(ring.clone(), self.arity(), self.degree());
        let components = id
            .components()
            .iter()
            .zip(&m_part)
            .map(|(z, m)| z + m)
            .collect();
        FormalMap::with_form(components, crate::freealg::MapForm::GForm)
            .expect("identity plus order >= 2 terms is a G-form map")
    }

    /// `o(N_[m]) >= m + 1` for every term.
    pub fn satisfies_order_bound(&self) -> bool {
        self.terms
            .iter()
            .enumerate()
            .all(|(i, term)| term.iter().all(|n| n.order().is_none_or(|o| o >= i + 2)))
    }

    /// `deg N_[m] <= m (deg H - 1) + 1` for polynomial `H`.
    pub fn satisfies_degree_bound(&self) -> bool {
        let Some(dh) = self.h().iter().filter_map(NCSeries::max_degree).max() else {
            return self.terms.iter().flatten().all(NCSeries::is_zero);
        };
        self.terms.iter().enumerate().all(|(i, term)| {
            let bound = (i + 1) * (dh - 1) + 1;
            term.iter()
                .all(|n| n.max_degree().is_none_or(|d| d <= bound))
        })
    }

    /// For `H` homogeneous of degree `d`, each `N_[m]` is homogeneous of
    /// degree `(d - 1) m + 1`. Terms past the truncation are vacuously so.
    pub fn satisfies_homogeneity(&self, d: usize) -> bool {
        self.terms.iter().enumerate().all(|(i, term)| {
            let target = (d - 1) * (i + 1) + 1;
            term.iter().all(|n| n.is_homogeneous_of(target))
        })
    }
}

/// `Σ_{k+l=m} [N_[k] ∂/∂z] N_[l]`, with `k` ascending.
pub fn convolution<R: Ring>(seq: &NSequence<R>, m: usize) -> Result<Vec<NCSeries<R>>> {
    assert!(m >= 2 && m - 1 <= seq.len(), "convolution needs N_[1..m-1]");
    let parts = (1..m)
        .into_par_iter()
        .map(|k| Derivation::new(seq.get(k).to_vec())?.apply_all(seq.get(m - k)))
        .collect::<Result<Vec<_>>>()?;
    let mut acc: Vec<NCSeries<R>> = seq.h().iter().map(NCSeries::zero_like).collect();
    for part in parts {
        for (a, p) in acc.iter_mut().zip(&part) {
            a.add_assign_unchecked(p);
        }
    }
    Ok(acc)
}

/// `N_[m] = (m - 1)^(-1) Σ_{k+l=m} [N_[k] ∂/∂z] N_[l]`. Fails when `m - 1`
/// is not a unit of the coefficient ring.
pub fn recurrent_step<R: Ring>(seq: &NSequence<R>, m: usize) -> Result<Vec<NCSeries<R>>> {
    convolution(seq, m)?
        .iter()
        .map(|c| c.div_by_int((m - 1) as i64))
        .collect()
}

pub(crate) fn start<R: Ring>(h: &[NCSeries<R>]) -> Result<NSequence<R>> {
    FormalMap::from_h(h.to_vec())?;
    NSequence::from_terms(vec![h.to_vec()])
}

/// The N-sequence of `H` by the characteristic-0 recurrence.
pub fn n_seq_recurrent<R: Ring>(h: &[NCSeries<R>]) -> Result<NSequence<R>> {
    let mut seq = start(h)?;
    let characteristic = seq.ring().characteristic();
    if characteristic != 0 {
        return Err(Error::Characteristic {
            engine: "recurrent",
            characteristic,
        });
    }
    for m in 2..=terms_needed(seq.degree()) {
        let next = recurrent_step(&seq, m)?;
        seq.push(next);
    }
    Ok(seq)
}

/// The inverse of `z - H` by the characteristic-0 recurrence.
pub fn invert_recurrent<R: Ring>(h: &[NCSeries<R>]) -> Result<FormalMap<R>> {
    let seq = n_seq_recurrent(h)?;
    Ok(seq.assemble(&seq.ring().one()))
}

/// `C_1 = H`, `C_m = [C_(m-1) ∂/∂z] H`, for `m = 1..=count`.
pub fn c_seq<R: Ring>(h: &[NCSeries<R>], count: usize) -> Result<Vec<Vec<NCSeries<R>>>> {
    check_order_two(h)?;
    let mut out: Vec<Vec<NCSeries<R>>> = vec![h.to_vec()];
    for _ in 1..count {
        let prev = out.last().expect("nonempty");
        let next = Derivation::new(prev.clone())?.apply_all(h)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PrimeField, Rationals};

    fn ad_y_powers(d: usize, count: usize) -> Vec<NCSeries<Rationals>> {
        let x = NCSeries::var(Rationals, 2, d, 0);
        let y = NCSeries::var(Rationals, 2, d, 1);
        let mut out = vec![x];
        for _ in 0..count {
            let prev = out.last().unwrap();
            out.push(&(&y * prev) - &(prev * &y));
        }
        out
    }

    #[test]
    fn ad_y_example_gives_powers() {
        let d = 7;
        let ad = ad_y_powers(d, d);
        let zero = ad[0].zero_like();
        let seq = n_seq_recurrent(&[ad[1].clone(), zero.clone()]).unwrap();
        assert_eq!(seq.len(), d - 1);
        for (m, term) in seq.terms().iter().enumerate() {
            assert_eq!(term, &[ad[m + 1].clone(), zero.clone()], "m = {}", m + 1);
        }
    }

    #[test]
    fn n2_is_expanded_ad_y_squared() {
        let x = NCSeries::var(Rationals, 2, 4, 0);
        let y = NCSeries::var(Rationals, 2, 4, 1);
        let h = vec![&(&y * &x) - &(&x * &y), y.zero_like()];
        let seq = n_seq_recurrent(&h).unwrap();
        let yyx = &(&y * &y) * &x;
        let yxy = &(&y * &x) * &y;
        let xyy = &(&x * &y) * &y;
        assert_eq!(seq.get(2)[0], &(&yyx - &yxy.mul_by_int(2)) + &xyy);
    }

    #[test]
    fn assemble_at_zero_is_identity() {
        let ad = ad_y_powers(5, 1);
        let seq = n_seq_recurrent(&[ad[1].clone(), ad[0].zero_like()]).unwrap();
        assert!(seq.assemble(&Rationals.zero()).is_identity());
    }

    #[test]
    fn c_sequence_of_ad_y() {
        let ad = ad_y_powers(6, 3);
        let zero = ad[0].zero_like();
        let c = c_seq(&[ad[1].clone(), zero.clone()], 3).unwrap();
        assert_eq!(c[0][0], ad[1]);
        assert_eq!(c[1][0], ad[2]);
        assert_eq!(c[2][0], ad[3]);
        assert!(c[2][1].is_zero());
    }

    #[test]
    fn recurrence_refuses_positive_characteristic() {
        let gf = PrimeField::new(3).unwrap();
        let x = NCSeries::var(gf, 1, 4, 0);
        let err = n_seq_recurrent(&[&x * &x]).unwrap_err();
        assert!(matches!(
            err,
            Error::Characteristic {
                characteristic: 3,
                ..
            }
        ));
    }

    #[test]
    fn bounds_hold_for_quadratic_h() {
        let x = NCSeries::var(Rationals, 2, 7, 0);
        let y = NCSeries::var(Rationals, 2, 7, 1);
        let h = vec![
            &(&x * &y) + &(&y * &y).mul_by_int(3),
            (&x * &x).mul_by_int(-2),
        ];
        let seq = n_seq_recurrent(&h).unwrap();
        assert!(seq.satisfies_order_bound());
        assert!(seq.satisfies_degree_bound());
        assert!(seq.satisfies_homogeneity(2));
    }
}
