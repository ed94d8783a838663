//! Exact coefficient rings.
//!
//! Every ring is described by a small *context* value implementing [`Ring`];
//! elements are plain data (`Ring::Elem`) and all arithmetic goes through the
//! context. This lets runtime parameters (the prime of a [`PrimeField`], the
//! truncation order of a [`TQuotient`], the variable table of an
//! [`IntPolyRing`]) live in one place instead of being copied into every
//! coefficient.
//!
//! Coefficient multiplication is always commutative. Noncommutativity of the
//! series algebra lives entirely in the words that index coefficients.

mod intpoly;
mod prime_field;
mod rational;
mod tquotient;

pub use intpoly::{IntPoly, IntPolyRing, LiftKey, Monomial, VarId};
pub use prime_field::PrimeField;
pub use rational::Rationals;
pub use tquotient::TQuotient;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{value} is not invertible in a ring of characteristic {characteristic}")]
    NotInvertible { value: String, characteristic: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("index {index} is out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("lift variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("cannot parse ring element {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("ring mismatch: {0}")]
    Mismatch(String),
}

/// An exact commutative coefficient ring.
///
/// Implementations must keep elements in a normal form so that `PartialEq`
/// on [`Ring::Elem`] is mathematical equality.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// 0 or a prime.
    fn characteristic(&self) -> u64;

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Exact division by an integer; fails when `m` is not a unit of the ring.
    fn div_by_int(&self, x: &Self::Elem, m: i64) -> Result<Self::Elem, RingError>;

    /// Canonical decimal rendering used by every JSON schema.
    fn format(&self, x: &Self::Elem) -> String;

    fn parse(&self, text: &str) -> Result<Self::Elem, RingError>;

    /// Size of the largest integer stored in `x`, in bits.
    fn coeff_bits(&self, x: &Self::Elem) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn mul_by_int(&self, x: &Self::Elem, m: i64) -> Self::Elem {
        self.mul(x, &self.from_i64(m))
    }

    fn pow(&self, x: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Image of a rational number; fails when the denominator is not a unit.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, RingError> {
        let num = self.from_bigint(q.numer());
        if q.denom().is_one() {
            return Ok(num);
        }
        let den = q.denom().to_i64().ok_or_else(|| RingError::NotInvertible {
            value: q.denom().to_string(),
            characteristic: self.characteristic(),
        })?;
        self.div_by_int(&num, den)
    }

    fn eq_elem(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

pub(crate) fn not_invertible<R: Ring>(ring: &R, m: i64) -> RingError {
    RingError::NotInvertible {
        value: m.to_string(),
        characteristic: ring.characteristic(),
    }
}

pub(crate) fn bits_of(n: &BigInt) -> u64 {
    if n.is_zero() {
        0
    } else {
        n.bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms<R: Ring>(ring: &R, samples: &[R::Elem]) {
        for a in samples {
            for b in samples {
                assert_eq!(ring.add(a, b), ring.add(b, a));
                assert_eq!(ring.mul(a, b), ring.mul(b, a));
                for c in samples {
                    assert_eq!(ring.add(&ring.add(a, b), c), ring.add(a, &ring.add(b, c)));
                    assert_eq!(
                        ring.mul(a, &ring.add(b, c)),
                        ring.add(&ring.mul(a, b), &ring.mul(a, c))
                    );
                    assert_eq!(ring.mul(&ring.mul(a, b), c), ring.mul(a, &ring.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_on_small_samples() {
        let q = Rationals;
        let qs: Vec<_> = ["0", "1", "-3/7", "5/2", "11"]
            .iter()
            .map(|s| q.parse(s).unwrap())
            .collect();
        check_axioms(&q, &qs);

        let gf = PrimeField::new(7).unwrap();
        let gs: Vec<_> = (0..7).map(|i| gf.from_i64(i)).collect();
        check_axioms(&gf, &gs);

        let tq = TQuotient::new(Rationals, 3);
        let ts = vec![
            tq.from_coeffs(vec![q.from_i64(1), q.from_i64(2)]).unwrap(),
            tq.from_coeffs(vec![
                q.zero(),
                q.parse("1/2").unwrap(),
                q.zero(),
                q.from_i64(-4),
            ])
            .unwrap(),
            tq.t_power(2),
            tq.one(),
        ];
        check_axioms(&tq, &ts);
    }

    #[test]
    fn from_rational_into_prime_field() {
        let gf = PrimeField::new(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(gf.from_rational(&half).unwrap(), 3);
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(gf.from_rational(&fifth).is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let q = Rationals;
        let x = q.parse("-2/3").unwrap();
        let mut acc = q.one();
        for e in 0..9 {
            assert_eq!(q.pow(&x, e), acc);
            acc = q.mul(&acc, &x);
        }
    }
}
