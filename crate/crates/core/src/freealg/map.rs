use serde::{Deserialize, Serialize};

use super::{Composer, Derivation, NCSeries, Word};
use crate::error::{Error, Result};
use crate::rings::Ring;

/// How a map's components relate to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapForm {
    /// `z - H` with `o(H) >= 2`.
    FForm,
    /// `z + M` with `o(M) >= 2`.
    GForm,
    General,
}

/// An `n`-vector of series in `n` letters, read as the substitution
/// `z_i ↦ components[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalMap<R: Ring> {
    components: Vec<NCSeries<R>>,
    form: MapForm,
}

fn check_shape<R: Ring>(components: &[NCSeries<R>]) -> Result<()> {
    let first = components
        .first()
        .ok_or_else(|| Error::InvalidArgument("a map needs at least one component".into()))?;
    if first.arity() != components.len() {
        return Err(Error::ArityMismatch {
            left: first.arity(),
            right: components.len(),
        });
    }
    for c in &components[1..] {
        first.check_compatible(c)?;
    }
    Ok(())
}

/// Checks `o(s) >= 2` for every series.
pub(crate) fn check_order_two<R: Ring>(series: &[NCSeries<R>]) -> Result<()> {
    for (i, s) in series.iter().enumerate() {
        if let Some(o) = s.order() {
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

impl<R: Ring> FormalMap<R> {
    pub fn general(components: Vec<NCSeries<R>>) -> Result<Self> {
        check_shape(&components)?;
        Ok(Self {
            components,
            form: MapForm::General,
        })
    }

    pub fn identity(ring: R, arity: usize, degree: usize) -> Self {
        Self {
            components: (0..arity)
                .map(|i| NCSeries::var(ring.clone(), arity, degree, i))
                .collect(),
            form: MapForm::GForm,
        }
    }

    /// `z - H`.
    pub fn from_h(h: Vec<NCSeries<R>>) -> Result<Self> {
        check_shape(&h)?;
        check_order_two(&h)?;
        let id = Self::identity(h[0].ring().clone(), h.len(), h[0].degree());
        let components = id.components.iter().zip(&h).map(|(z, hi)| z - hi).collect();
        Ok(Self {
            components,
            form: MapForm::FForm,
        })
    }

    /// `z + M`.
    pub fn from_m(m: Vec<NCSeries<R>>) -> Result<Self> {
        check_shape(&m)?;
        check_order_two(&m)?;
        let id = Self::identity(m[0].ring().clone(), m.len(), m[0].degree());
        let components = id.components.iter().zip(&m).map(|(z, mi)| z + mi).collect();
        Ok(Self {
            components,
            form: MapForm::GForm,
        })
    }

    /// Validates the identity linear part and tags the map with `form`.
    pub fn with_form(components: Vec<NCSeries<R>>, form: MapForm) -> Result<Self> {
        let map = Self::general(components)?;
        if form == MapForm::General {
            return Ok(map);
        }
        let rest = map.identity_deviation();
        for (i, c) in map.components.iter().enumerate() {
            if !c.bucket(0).is_empty() {
                return Err(Error::ConstantTerm { component: i + 1 });
            }
            if !rest[i].bucket(1).is_empty() {
                return Err(Error::LinearPart { component: i + 1 });
            }
        }
        Ok(Self { form, ..map })
    }

    pub fn components(&self) -> &[NCSeries<R>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<NCSeries<R>> {
        self.components
    }

    pub fn component(&self, i: usize) -> &NCSeries<R> {
        &self.components[i]
    }

    pub fn form(&self) -> MapForm {
        self.form
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn ring(&self) -> &R {
        self.components[0].ring()
    }

    /// `map - z`.
    pub fn identity_deviation(&self) -> Vec<NCSeries<R>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut d = c.clone();
                let m1 = self.ring().neg(&self.ring().one());
                d.add_term(Word::letter(i as u8), m1);
                d
            })
            .collect()
    }

    /// `H = z - F` for an F-form map, `M = G - z` otherwise.
    pub fn nonlinear_part(&self) -> Vec<NCSeries<R>> {
        let dev = self.identity_deviation();
        match self.form {
            MapForm::FForm => dev.iter().map(|d| -d).collect(),
            _ => dev,
        }
    }

    /// `u(self)`.
    pub fn substitute(&self, u: &NCSeries<R>) -> Result<NCSeries<R>> {
        u.compose(&self.components)
    }

    /// `u_k(self)` for each `k`, sharing one monomial cache.
    pub fn substitute_all(&self, us: &[NCSeries<R>]) -> Result<Vec<NCSeries<R>>> {
        let mut composer = Composer::new(&self.components)?;
        us.iter().map(|u| composer.compose(u)).collect()
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &FormalMap<R>) -> Result<FormalMap<R>> {
        let components = inner.substitute_all(&self.components)?;
        Ok(Self {
            components,
            form: MapForm::General,
        })
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self {
            components: self.components.iter().map(|c| c.truncate(degree)).collect(),
            form: self.form,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.identity_deviation().iter().all(NCSeries::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.components.iter().map(NCSeries::term_count).sum()
    }
}

/// `(F⁻¹)_* δ = [(δF)(F⁻¹) ∂/∂z]`, the derivation induced on the target of
/// `F⁻¹`. `f_inv` must be a two-sided inverse of `f` up to the truncation.
pub fn star_action<R: Ring>(
    f: &FormalMap<R>,
    f_inv: &FormalMap<R>,
    delta: &Derivation<R>,
) -> Result<Derivation<R>> {
    if !f.compose(f_inv)?.is_identity() || !f_inv.compose(f)?.is_identity() {
        return Err(Error::InverseCheck(
            "supplied inverse does not invert the map".into(),
        ));
    }
    let delta_f = delta.apply_all(f.components())?;
    Derivation::new(f_inv.substitute_all(&delta_f)?)
}

/// `(map_* δ) u = (δ (u(map⁻¹)))(map)`, evaluated literally from the
/// definition of the induced action.
pub fn induced_action_on<R: Ring>(
    map: &FormalMap<R>,
    inverse: &FormalMap<R>,
    delta: &Derivation<R>,
    u: &NCSeries<R>,
) -> Result<NCSeries<R>> {
    let pulled = inverse.substitute(u)?;
    map.substitute(&delta.apply(&pulled)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Rationals;

    fn xy(d: usize) -> (NCSeries<Rationals>, NCSeries<Rationals>) {
        (
            NCSeries::var(Rationals, 2, d, 0),
            NCSeries::var(Rationals, 2, d, 1),
        )
    }

    #[test]
    fn f_form_round_trip() {
        let (x, y) = xy(4);
        let h = vec![&(&y * &x) - &(&x * &y), y.zero_like()];
        let f = FormalMap::from_h(h.clone()).unwrap();
        assert_eq!(f.form(), MapForm::FForm);
        assert_eq!(f.nonlinear_part(), h);
        let again = FormalMap::with_form(f.components().to_vec(), MapForm::FForm).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn form_validation_rejects_linear_terms() {
        let (x, y) = xy(4);
        assert!(matches!(
            FormalMap::from_h(vec![y.clone(), y.zero_like()]),
            Err(Error::OrderTooLow {
                component: 1,
                order: 1,
                ..
            })
        ));
        let comps = vec![&x + &y, y.clone()];
        assert!(matches!(
            FormalMap::with_form(comps, MapForm::FForm),
            Err(Error::LinearPart { component: 1 })
        ));
    }

    #[test]
    fn star_action_of_identity_is_trivial() {
        let id = FormalMap::identity(Rationals, 2, 4);
        let (x, y) = xy(4);
        let delta = Derivation::new(vec![&x * &y, &y * &y]).unwrap();
        assert_eq!(star_action(&id, &id, &delta).unwrap(), delta);
        let zero = Derivation::zero(Rationals, 2, 4);
        assert_eq!(star_action(&id, &id, &zero).unwrap(), zero);
    }

    #[test]
    fn star_action_rejects_wrong_inverse() {
        let (x, y) = xy(4);
        let f = FormalMap::from_h(vec![&x * &x, y.zero_like()]).unwrap();
        let id = FormalMap::identity(Rationals, 2, 4);
        let delta = Derivation::euler(Rationals, 2, 4);
        assert!(matches!(
            star_action(&f, &id, &delta),
            Err(Error::InverseCheck(_))
        ));
    }
}
