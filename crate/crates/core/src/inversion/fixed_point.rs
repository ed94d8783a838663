use crate::error::Result;
use crate::freealg::{FormalMap, NCSeries};
use crate::rings::Ring;

/// Solves `M = H(z + M)` by iteration from `M = 0`.
///
/// Each round fixes at least one more degree of `M`, so the iteration stops
/// after at most `D` rounds. Works over any coefficient ring, including
/// `t`-quotients, where it inverts a whole deformation at once.
pub fn fixed_point_m<R: Ring>(h: &[NCSeries<R>]) -> Result<Vec<NCSeries<R>>> {
    FormalMap::from_h(h.to_vec())?;
    let mut m: Vec<NCSeries<R>> = h.iter().map(NCSeries::zero_like).collect();
    for _ in 0..=h[0].degree() {
        let g = FormalMap::from_m(m.clone())?;
        let next = g.substitute_all(h)?;
        if next == m {
            break;
        }
        m = next;
    }
    Ok(m)
}

/// The inverse `z + M` of `z - H`.
pub fn invert_fixed_point<R: Ring>(h: &[NCSeries<R>]) -> Result<FormalMap<R>> {
    FormalMap::from_m(fixed_point_m(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Rationals;

    #[test]
    fn zero_h_gives_identity() {
        let z = NCSeries::var(Rationals, 1, 5, 0);
        assert!(invert_fixed_point(&[z.zero_like()]).unwrap().is_identity());
    }

    #[test]
    fn square_gives_catalan_numbers() {
        let z = NCSeries::var(Rationals, 1, 5, 0);
        let g = invert_fixed_point(&[&z * &z]).unwrap();
        let mut expect = z.zero_like();
        let mut power = z.clone();
        for c in [1, 1, 2, 5, 14] {
            expect = &expect + &power.mul_by_int(c);
            power = &power * &z;
        }
        assert_eq!(g.component(0), &expect);
    }

    #[test]
    fn commutator_h_inverts() {
        let x = NCSeries::var(Rationals, 2, 3, 0);
        let y = NCSeries::var(Rationals, 2, 3, 1);
        let ad = &(&y * &x) - &(&x * &y);
        let h = vec![ad.clone(), y.zero_like()];
        let g = invert_fixed_point(&h).unwrap();
        let f = FormalMap::from_h(h).unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        let ad2 = &(&y * &ad) - &(&ad * &y);
        assert_eq!(g.component(0), &(&(&x + &ad) + &ad2));
    }
}
