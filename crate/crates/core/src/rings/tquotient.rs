use num_bigint::BigInt;

use super::{Ring, RingError};

/// The truncated polynomial ring `R[t]/(t^(K+1))` in a central parameter `t`.
///
/// Elements are coefficient vectors `c_0..c_K` of length exactly `K + 1`.
/// Two contexts with different `K` are different rings; nothing is ever
/// re-truncated implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct TQuotient<R: Ring> {
    base: R,
    order: usize,
}

impl<R: Ring> TQuotient<R> {
    pub fn new(base: R, order: usize) -> Self {
        Self { base, order }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// The truncation order `K`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The same base ring truncated one `t`-order lower.
    ///
    /// # Panics
    /// When `K = 0`.
    pub fn lowered(&self) -> Self {
        assert!(self.order > 0, "cannot lower a t-order 0 quotient");
        Self::new(self.base.clone(), self.order - 1)
    }

    pub fn raised(&self) -> Self {
        Self::new(self.base.clone(), self.order + 1)
    }

    /// Pads with zeros; more than `K + 1` coefficients is an error.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Result<Vec<R::Elem>, RingError> {
        if coeffs.len() > self.order + 1 {
            return Err(RingError::Mismatch(format!(
                "{} coefficients do not fit t-order {}",
                coeffs.len(),
                self.order
            )));
        }
        coeffs.resize(self.order + 1, self.base.zero());
        Ok(coeffs)
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.order + 1];
        v[0] = c;
        v
    }

    /// `c · t^j`, zero when `j > K`.
    pub fn monomial(&self, c: R::Elem, j: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.order + 1];
        if j <= self.order {
            v[j] = c;
        }
        v
    }

    pub fn t_power(&self, j: usize) -> Vec<R::Elem> {
        self.monomial(self.base.one(), j)
    }

    /// Coefficient of `t^j`.
    pub fn residue_at(&self, x: &[R::Elem], j: usize) -> Result<R::Elem, RingError> {
        x.get(j).cloned().ok_or(RingError::IndexOutOfRange {
            index: j,
            max: self.order,
        })
    }

    /// `∂/∂t`. The coefficient of `t^K` in the result is always zero because
    /// it depends on the discarded `t^(K+1)` term.
    pub fn t_derivative(&self, x: &[R::Elem]) -> Vec<R::Elem> {
        let mut out = vec![self.base.zero(); self.order + 1];
        for j in 0..self.order {
            out[j] = self.base.mul_by_int(&x[j + 1], (j + 1) as i64);
        }
        out
    }

    /// Reinterprets `x` in a lower-order quotient by dropping high coefficients.
    pub fn truncate_into(&self, x: &[R::Elem], target: &TQuotient<R>) -> Vec<R::Elem> {
        assert!(target.order <= self.order && target.base == self.base);
        x[..=target.order].to_vec()
    }

    /// `x / t` as an element of the quotient one order lower. Fails unless
    /// the constant coefficient vanishes.
    pub fn divide_by_t(&self, x: &[R::Elem]) -> Result<Vec<R::Elem>, RingError> {
        if !self.base.is_zero(&x[0]) {
            return Err(RingError::NotInvertible {
                value: "t".into(),
                characteristic: self.characteristic(),
            });
        }
        Ok(x[1..].to_vec())
    }

    /// Substitutes the scalar `t0` for `t`.
    pub fn evaluate(&self, x: &[R::Elem], t0: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in x.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, t0), c);
        }
        acc
    }
}

impl<R: Ring> Ring for TQuotient<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.order + 1]
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        for (x, y) in a.iter_mut().zip(b) {
            self.base.add_assign(x, y);
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().take(self.order + 1 - i).enumerate() {
                if !self.base.is_zero(y) {
                    let p = self.base.mul(x, y);
                    self.base.add_assign(&mut out[i + j], &p);
                }
            }
        }
        out
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_bigint(n))
    }

    fn mul_by_int(&self, x: &Self::Elem, m: i64) -> Self::Elem {
        x.iter().map(|c| self.base.mul_by_int(c, m)).collect()
    }

    fn div_by_int(&self, x: &Self::Elem, m: i64) -> Result<Self::Elem, RingError> {
        x.iter().map(|c| self.base.div_by_int(c, m)).collect()
    }

    fn format(&self, x: &Self::Elem) -> String {
        let parts: Vec<String> = x.iter().map(|c| self.base.format(c)).collect();
        format!("[{}]", parts.join(", "))
    }

    fn parse(&self, text: &str) -> Result<Self::Elem, RingError> {
        let err = |reason: &str| RingError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("expected a bracketed coefficient list"))?;
        let mut coeffs = Vec::new();
        for piece in split_top_level(inner) {
            if !piece.trim().is_empty() {
                coeffs.push(self.base.parse(piece)?);
            }
        }
        self.from_coeffs(coeffs)
            .map_err(|_| err("too many coefficients"))
    }

    fn coeff_bits(&self, x: &Self::Elem) -> u64 {
        x.iter().map(|c| self.base.coeff_bits(c)).max().unwrap_or(0)
    }
}

pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PrimeField, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn t_derivative_power_rule() {
        let r = TQuotient::new(Rationals, 2);
        let x = r.from_coeffs(vec![q(1), q(2), q(3)]).unwrap();
        assert_eq!(r.t_derivative(&x), vec![q(2), q(6), q(0)]);
        assert!(r.is_zero(&r.t_derivative(&r.constant(q(7)))));
    }

    #[test]
    fn t_derivative_in_characteristic_five() {
        let gf = PrimeField::new(5).unwrap();
        let r = TQuotient::new(gf, 6);
        assert!(r.is_zero(&r.t_derivative(&r.t_power(5))));
        assert_eq!(r.t_derivative(&r.t_power(6)), r.monomial(1, 5));
    }

    #[test]
    fn residue_reads_coefficients() {
        let r = TQuotient::new(Rationals, 2);
        let x = r.from_coeffs(vec![q(1), q(2), q(3)]).unwrap();
        assert_eq!(r.residue_at(&x, 1).unwrap(), q(2));
        assert_eq!(r.residue_at(&r.zero(), 0).unwrap(), q(0));
        assert_eq!(r.residue_at(&r.t_power(2), 2).unwrap(), q(1));
        assert!(r.residue_at(&x, 3).is_err());
    }

    #[test]
    fn multiplication_truncates_and_convolves() {
        let r = TQuotient::new(Rationals, 3);
        let x = r.from_coeffs(vec![q(1), q(-2), q(0), q(5)]).unwrap();
        let y = r.from_coeffs(vec![q(3), q(1), q(4), q(1)]).unwrap();
        let p = r.mul(&x, &y);
        for j in 0..=3 {
            let mut s = q(0);
            for i in 0..=j {
                s += &x[i] * &y[j - i];
            }
            assert_eq!(p[j], s);
        }
        assert!(r.is_zero(&r.mul(&r.t_power(2), &r.t_power(2))));
    }

    #[test]
    fn format_parse_round_trip() {
        let r = TQuotient::new(Rationals, 2);
        let x = r
            .from_coeffs(vec![q(1), Rationals.parse("-1/3").unwrap()])
            .unwrap();
        assert_eq!(r.format(&x), "[1, -1/3, 0]");
        assert_eq!(r.parse(&r.format(&x)).unwrap(), x);
    }

    #[test]
    fn divide_by_t_requires_zero_constant() {
        let r = TQuotient::new(Rationals, 2);
        let x = r.from_coeffs(vec![q(0), q(4), q(9)]).unwrap();
        assert_eq!(r.divide_by_t(&x).unwrap(), vec![q(4), q(9)]);
        assert!(r.divide_by_t(&r.one()).is_err());
    }
}
