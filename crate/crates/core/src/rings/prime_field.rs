use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{not_invertible, Ring, RingError};

/// GF(p): residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        Some(self.pow(&a, self.p - 2))
    }

    fn reduce_i64(&self, m: i64) -> u64 {
        m.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn from_i64(&self, n: i64) -> u64 {
        if self.p <= i64::MAX as u64 {
            self.reduce_i64(n)
        } else {
            self.from_bigint(&BigInt::from(n))
        }
    }

    fn div_by_int(&self, x: &u64, m: i64) -> Result<u64, RingError> {
        let inv = self
            .inverse(self.from_i64(m))
            .ok_or_else(|| not_invertible(self, m))?;
        Ok(self.mul(x, &inv))
    }

    fn format(&self, x: &u64) -> String {
        x.to_string()
    }

    fn parse(&self, text: &str) -> Result<u64, RingError> {
        let n: BigInt = text.trim().parse().map_err(|_| RingError::Parse {
            text: text.to_string(),
            reason: "expected an integer".into(),
        })?;
        Ok(self.from_bigint(&n))
    }

    fn coeff_bits(&self, x: &u64) -> u64 {
        (u64::BITS - x.leading_zeros()) as u64
    }
}
