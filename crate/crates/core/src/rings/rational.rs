use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{bits_of, not_invertible, Ring, RingError};

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators. Elements are always reduced with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational, RingError> {
        Ok(q.clone())
    }

    fn div_by_int(&self, x: &BigRational, m: i64) -> Result<BigRational, RingError> {
        if m == 0 {
            return Err(not_invertible(self, m));
        }
        Ok(x / BigRational::from_integer(BigInt::from(m)))
    }

    fn format(&self, x: &BigRational) -> String {
        if x.denom().is_one() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }

    fn parse(&self, text: &str) -> Result<BigRational, RingError> {
        let err = |reason: &str| RingError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn coeff_bits(&self, x: &BigRational) -> u64 {
        bits_of(x.numer()).max(bits_of(x.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        let q = Rationals;
        for s in ["0", "1", "-3/7", "12345678901234567890123/2"] {
            assert_eq!(q.format(&q.parse(s).unwrap()), s);
        }
        assert_eq!(q.format(&q.parse("6/-4").unwrap()), "-3/2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn div_by_int_is_exact() {
        let q = Rationals;
        let x = q.parse("-3/7").unwrap();
        for m in [1, -2, 3, 97] {
            assert_eq!(q.div_by_int(&q.mul_by_int(&x, m), m).unwrap(), x);
        }
        assert!(q.div_by_int(&x, 0).is_err());
    }
}
