use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};
use crate::rings::Ring;

/// A noncommutative power series in `arity` letters, truncated at total
/// degree `degree`.
///
/// Terms are kept in one bucket per degree; zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Debug, Clone)]
pub struct NCSeries<R: Ring> {
    ring: R,
    arity: usize,
    degree: usize,
    buckets: Vec<BTreeMap<Word, R::Elem>>,
}

impl<R: Ring> PartialEq for NCSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.degree == other.degree
            && self.ring == other.ring
            && self.buckets == other.buckets
    }
}

/// Interchange form of a series; `word` letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub arity: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub coeff: String,
}

impl<R: Ring> NCSeries<R> {
    pub fn zero(ring: R, arity: usize, degree: usize) -> Self {
        assert!((1..=256).contains(&arity), "arity must be in 1..=256");
        Self {
            ring,
            arity,
            degree,
            buckets: vec![BTreeMap::new(); degree + 1],
        }
    }

    pub fn constant(ring: R, arity: usize, degree: usize, c: R::Elem) -> Self {
        let mut s = Self::zero(ring, arity, degree);
        s.add_term(Word::empty(), c);
        s
    }

    pub fn one(ring: R, arity: usize, degree: usize) -> Self {
        let one = ring.one();
        Self::constant(ring, arity, degree, one)
    }

    /// The variable `z_(i+1)`; zero when `degree = 0`.
    pub fn var(ring: R, arity: usize, degree: usize, i: usize) -> Self {
        assert!(
            i < arity,
            "variable index {i} out of range for arity {arity}"
        );
        let mut s = Self::zero(ring, arity, degree);
        let one = s.ring.one();
        s.add_term(Word::letter(i as u8), one);
        s
    }

    pub fn from_terms(
        ring: R,
        arity: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Word, R::Elem)>,
    ) -> Self {
        let mut s = Self::zero(ring, arity, degree);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// A zero series with the same ring, arity and truncation.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.ring.clone(), self.arity, self.degree)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.buckets.iter().all(BTreeMap::is_empty)
    }

    pub fn term_count(&self) -> usize {
        self.buckets.iter().map(BTreeMap::len).sum()
    }

    /// Terms in degree-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R::Elem)> {
        self.buckets.iter().flat_map(|b| b.iter())
    }

    pub fn bucket(&self, d: usize) -> &BTreeMap<Word, R::Elem> {
        &self.buckets[d]
    }

    pub fn coeff(&self, w: &Word) -> R::Elem {
        self.buckets
            .get(w.degree())
            .and_then(|b| b.get(w))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c · w`; words above the truncation degree are discarded.
    pub fn add_term(&mut self, w: Word, c: R::Elem) {
        let d = w.degree();
        if d > self.degree || self.ring.is_zero(&c) {
            return;
        }
        debug_assert!(w.letters().iter().all(|&l| (l as usize) < self.arity));
        match self.buckets[d].entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                self.ring.add_assign(e.get_mut(), &c);
                if self.ring.is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    /// Overwrites the coefficient of `w`.
    pub fn set_coeff(&mut self, w: Word, c: R::Elem) {
        let d = w.degree();
        if d > self.degree {
            return;
        }
        if self.ring.is_zero(&c) {
            self.buckets[d].remove(&w);
        } else {
            self.buckets[d].insert(w, c);
        }
    }

    /// Minimum degree of a stored term, `None` standing for `+∞`.
    pub fn order(&self) -> Option<usize> {
        self.buckets.iter().position(|b| !b.is_empty())
    }

    /// Largest degree of a stored term, `None` for the zero series.
    pub fn max_degree(&self) -> Option<usize> {
        self.buckets.iter().rposition(|b| !b.is_empty())
    }

    /// Is every stored term of degree `d`?
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.buckets
            .iter()
            .enumerate()
            .all(|(e, b)| e == d || b.is_empty())
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut s = self.zero_like();
        if d <= self.degree {
            s.buckets[d] = self.buckets[d].clone();
        }
        s
    }

    /// Re-truncates at a lower degree.
    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree, "cannot raise truncation degree");
        Self {
            ring: self.ring.clone(),
            arity: self.arity,
            degree,
            buckets: self.buckets[..=degree].to_vec(),
        }
    }

    /// Drops every term above `bound` but keeps the truncation degree.
    pub fn truncate_to_bound(&self, bound: usize) -> Self {
        let mut s = self.clone();
        for b in s.buckets.iter_mut().skip(bound + 1) {
            b.clear();
        }
        s
    }

    /// Same terms under a larger truncation degree. Only meaningful when the
    /// series is known to be exact (e.g. a polynomial of lower degree).
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut s = Self::zero(self.ring.clone(), self.arity, degree);
        for (w, c) in self.terms() {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        ring: S,
        mut f: impl FnMut(&R::Elem) -> S::Elem,
    ) -> NCSeries<S> {
        let mut out = NCSeries::zero(ring, self.arity, self.degree);
        for (w, c) in self.terms() {
            let v = f(c);
            out.add_term(w.clone(), v);
        }
        out
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            let n = self.ring.neg(c);
            out.add_term(w.clone(), n);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_truncated(other, self.degree))
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c.clone());
        }
    }

    /// Product keeping only words of degree `<= max_degree` (and `<= D`).
    pub(crate) fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = self.zero_like();
        let top = max_degree.min(self.degree);
        for (da, ba) in self.buckets.iter().enumerate() {
            if da > top || ba.is_empty() {
                continue;
            }
            for (db, bb) in other.buckets.iter().enumerate().take(top - da + 1) {
                if bb.is_empty() {
                    continue;
                }
                let target = &mut out.buckets[da + db];
                for (wa, ca) in ba {
                    for (wb, cb) in bb {
                        let c = self.ring.mul(ca, cb);
                        if self.ring.is_zero(&c) {
                            continue;
                        }
                        match target.entry(wa.concat(wb)) {
                            Entry::Vacant(e) => {
                                e.insert(c);
                            }
                            Entry::Occupied(mut e) => {
                                self.ring.add_assign(e.get_mut(), &c);
                            }
                        }
                    }
                }
                target.retain(|_, c| !self.ring.is_zero(c));
            }
        }
        out
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = self.ring.clone();
        self.map_coeffs(ring, |x| self.ring.mul(c, x))
    }

    pub fn mul_by_int(&self, m: i64) -> Self {
        let ring = self.ring.clone();
        self.map_coeffs(ring, |x| self.ring.mul_by_int(x, m))
    }

    pub fn div_by_int(&self, m: i64) -> Result<Self> {
        let mut out = self.zero_like();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), self.ring.div_by_int(c, m)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            arity: self.arity,
            degree: self.degree,
            terms: self
                .terms()
                .map(|(w, c)| TermJson {
                    word: w.letters().iter().map(|&l| l as usize + 1).collect(),
                    coeff: self.ring.format(c),
                })
                .collect(),
        }
    }

    pub fn from_json(ring: R, json: &SeriesJson) -> Result<Self> {
        let mut s = Self::zero(ring, json.arity, json.degree);
        for t in &json.terms {
            if t.word.iter().any(|&l| l == 0 || l > json.arity) {
                return Err(Error::InvalidArgument(format!(
                    "word {:?} uses a letter outside 1..={}",
                    t.word, json.arity
                )));
            }
            if t.word.len() > json.degree {
                return Err(Error::InvalidArgument(format!(
                    "word {:?} exceeds truncation degree {}",
                    t.word, json.degree
                )));
            }
            let letters: Vec<u8> = t.word.iter().map(|&l| (l - 1) as u8).collect();
            let c = s.ring.parse(&t.coeff)?;
            s.add_term(Word::from_letters(&letters), c);
        }
        Ok(s)
    }
}

impl<R: Ring> Add for &NCSeries<R> {
    type Output = NCSeries<R>;

    fn add(self, rhs: Self) -> NCSeries<R> {
        self.try_add(rhs).expect("incompatible series in +")
    }
}

impl<R: Ring> Sub for &NCSeries<R> {
    type Output = NCSeries<R>;

    fn sub(self, rhs: Self) -> NCSeries<R> {
        self.try_sub(rhs).expect("incompatible series in -")
    }
}

impl<R: Ring> Mul for &NCSeries<R> {
    type Output = NCSeries<R>;

    fn mul(self, rhs: Self) -> NCSeries<R> {
        self.try_mul(rhs).expect("incompatible series in *")
    }
}

impl<R: Ring> Neg for &NCSeries<R> {
    type Output = NCSeries<R>;

    fn neg(self) -> NCSeries<R> {
        let ring = self.ring.clone();
        self.map_coeffs(ring, |c| self.ring.neg(c))
    }
}
