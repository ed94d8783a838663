use super::{FormalMap, NCSeries, Word};
use crate::error::{Error, Result};
use crate::rings::Ring;

/// The derivation `[u ∂/∂z]` sending `z_i ↦ u_i`, extended by the Leibniz
/// rule.
///
/// In free variables this is *substitution at each letter position*: for a
/// word `z_{i1}…z_{im}` the image is `Σ_j z_{i1}…z_{i(j-1)} · u_{ij} ·
/// z_{i(j+1)}…z_{im}`. It is not left multiplication by `u_i ∂/∂z_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation<R: Ring> {
    components: Vec<NCSeries<R>>,
}

impl<R: Ring> Derivation<R> {
    pub fn new(components: Vec<NCSeries<R>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("derivation needs components".into()))?;
        if first.arity() != components.len() {
            return Err(Error::ArityMismatch {
                left: first.arity(),
                right: components.len(),
            });
        }
        for c in &components[1..] {
            first.check_compatible(c)?;
        }
        Ok(Self { components })
    }

    /// `[∂/∂z_i]`: `z_i ↦ 1`, every other letter to 0.
    pub fn coordinate(ring: R, arity: usize, degree: usize, i: usize) -> Self {
        let components = (0..arity)
            .map(|j| {
                if j == i {
                    NCSeries::one(ring.clone(), arity, degree)
                } else {
                    NCSeries::zero(ring.clone(), arity, degree)
                }
            })
            .collect();
        Self { components }
    }

    /// The Euler derivation `z_i ↦ z_i`.
    pub fn euler(ring: R, arity: usize, degree: usize) -> Self {
        let components = (0..arity)
            .map(|i| NCSeries::var(ring.clone(), arity, degree, i))
            .collect();
        Self { components }
    }

    pub fn zero(ring: R, arity: usize, degree: usize) -> Self {
        let components = (0..arity)
            .map(|_| NCSeries::zero(ring.clone(), arity, degree))
            .collect();
        Self { components }
    }

    pub fn components(&self) -> &[NCSeries<R>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<NCSeries<R>> {
        self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    /// `δ f`, truncated at the common degree.
    pub fn apply(&self, f: &NCSeries<R>) -> Result<NCSeries<R>> {
        self.components[0].check_compatible(f)?;
        let ring = f.ring();
        let top = f.degree();
        let mut out = f.zero_like();
        for (w, cw) in f.terms() {
            let m = w.degree();
            for (pos, &letter) in w.letters().iter().enumerate() {
                let u = &self.components[letter as usize];
                // Terms of u with degree e land in degree m - 1 + e.
                for e in 0..=(top + 1).saturating_sub(m) {
                    for (v, cv) in u.bucket(e) {
                        out.add_term(w.replace_at(pos, v), ring.mul(cw, cv));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies `self` componentwise to a vector of series.
    pub fn apply_all(&self, fs: &[NCSeries<R>]) -> Result<Vec<NCSeries<R>>> {
        fs.iter().map(|f| self.apply(f)).collect()
    }

    /// Components composed with `map`, i.e. `[u(map) ∂/∂z]`.
    pub fn compose_components(&self, map: &FormalMap<R>) -> Result<Self> {
        Ok(Self {
            components: map.substitute_all(&self.components)?,
        })
    }
}

/// Words of `f` with one occurrence of `z_i` deleted, i.e. `[∂/∂z_i] f`.
pub(crate) fn coordinate_derivative<R: Ring>(f: &NCSeries<R>, i: usize) -> NCSeries<R> {
    let mut out = f.zero_like();
    for (w, c) in f.terms() {
        for (pos, &l) in w.letters().iter().enumerate() {
            if l as usize == i {
                out.add_term(w.replace_at(pos, &Word::empty()), c.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Rationals, Ring};

    fn xy(d: usize) -> (NCSeries<Rationals>, NCSeries<Rationals>) {
        (
            NCSeries::var(Rationals, 2, d, 0),
            NCSeries::var(Rationals, 2, d, 1),
        )
    }

    #[test]
    fn warning_example_is_not_left_multiplication() {
        let (x, y) = xy(5);
        let u = &(&x * &x) + &(&y * &x);
        let delta = Derivation::new(vec![u.clone(), y.zero_like()]).unwrap();
        assert_eq!(delta.apply(&(&y * &x)).unwrap(), &y * &u);
        assert_ne!(&y * &u, &u * &y);
    }

    #[test]
    fn euler_derivation_scales_homogeneous_parts() {
        let (x, y) = xy(5);
        let f = &(&(&x * &y) * &x) - &(&(&y * &y) * &x).mul_by_int(4);
        let euler = Derivation::euler(Rationals, 2, 5);
        assert_eq!(euler.apply(&f).unwrap(), f.mul_by_int(3));
    }

    #[test]
    fn ad_y_derivation_squares() {
        let (x, y) = xy(4);
        let ad = &(&y * &x) - &(&x * &y);
        let delta = Derivation::new(vec![ad.clone(), y.zero_like()]).unwrap();
        let ad2 = delta.apply(&ad).unwrap();
        let expect = &(&(&(&y * &y) * &x) - &(&(&y * &x) * &y).mul_by_int(2)) + &(&(&x * &y) * &y);
        assert_eq!(ad2, expect);
    }

    #[test]
    fn coordinate_derivative_of_square() {
        let (x, _) = xy(4);
        let d = Derivation::coordinate(Rationals, 2, 4, 0);
        assert_eq!(d.apply(&(&x * &x)).unwrap(), x.mul_by_int(2));
        assert_eq!(coordinate_derivative(&(&x * &x), 0), x.mul_by_int(2));
    }

    #[test]
    fn constant_components_lower_degree() {
        let (x, y) = xy(3);
        let d = Derivation::coordinate(Rationals, 2, 3, 1);
        let f = &(&(&x * &y) * &x) + &(&y * &y);
        let got = d.apply(&f).unwrap();
        let expect = &(&x * &x) + &y.mul_by_int(2);
        assert_eq!(got, expect);
        assert!(Derivation::zero(Rationals, 2, 3)
            .apply(&f)
            .unwrap()
            .is_zero());
        let _ = Rationals.one();
    }
}
