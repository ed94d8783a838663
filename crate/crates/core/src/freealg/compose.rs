use std::collections::HashMap;

use super::{NCSeries, Word};
use crate::error::{Error, Result};
use crate::rings::Ring;

/// Substitutes `z_i ↦ maps[i]` into series.
///
/// Images of monomials `maps[i1] · … · maps[ik]` are built by extending
/// shorter cached prefixes one letter at a time, so composing several series
/// with the same map reuses work. A prefix whose accumulated order exceeds
/// the truncation degree is known to vanish and is never multiplied out.
#[derive(Debug)]
pub struct Composer<'a, R: Ring> {
    maps: &'a [NCSeries<R>],
    orders: Vec<usize>,
    cache: HashMap<(Word, usize), NCSeries<R>>,
}

impl<'a, R: Ring> Composer<'a, R> {
    pub fn new(maps: &'a [NCSeries<R>]) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty substitution".into()))?;
        let mut orders = Vec::with_capacity(maps.len());
        for (i, m) in maps.iter().enumerate() {
            first.check_compatible(m)?;
            match m.order() {
                Some(0) => return Err(Error::ConstantTerm { component: i + 1 }),
                Some(o) => orders.push(o),
                None => orders.push(m.degree() + 1),
            }
        }
        Ok(Self {
            maps,
            orders,
            cache: HashMap::new(),
        })
    }

    fn degree(&self) -> usize {
        self.maps[0].degree()
    }

    /// `u(maps)`.
    pub fn compose(&mut self, u: &NCSeries<R>) -> Result<NCSeries<R>> {
        if u.arity() != self.maps.len() {
            return Err(Error::ArityMismatch {
                left: u.arity(),
                right: self.maps.len(),
            });
        }
        if u.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: u.degree(),
                right: self.degree(),
            });
        }
        if *u.ring() != *self.maps[0].ring() {
            return Err(Error::RingMismatch);
        }
        let ring = u.ring().clone();
        let mut out = self.maps[0].zero_like();
        for (w, c) in u.terms() {
            if w.is_empty() {
                out.add_term(Word::empty(), c.clone());
                continue;
            }
            if let Some(img) = self.image(w) {
                for (v, x) in img.terms() {
                    out.add_term(v.clone(), ring.mul(c, x));
                }
            }
        }
        Ok(out)
    }

    fn word_order(&self, w: &[u8]) -> usize {
        w.iter().map(|&l| self.orders[l as usize]).sum()
    }

    /// Image of a nonempty word, `None` when it vanishes under truncation.
    ///
    /// The prefix `w[..=k]` only needs to be exact up to degree
    /// `D - order(w[k+1..])`, so cache entries are keyed by that bound too.
    fn image(&mut self, w: &Word) -> Option<&NCSeries<R>> {
        let letters = w.letters();
        let d = self.degree();
        if self.word_order(letters) > d {
            return None;
        }
        let bound = |k: usize, this: &Self| d - this.word_order(&letters[k + 1..]);
        let last = letters.len() - 1;
        let full_key = (w.clone(), d);
        if !self.cache.contains_key(&full_key) {
            let mut k = last;
            let mut acc = loop {
                let key = (Word::from_letters(&letters[..=k]), bound(k, self));
                if let Some(hit) = self.cache.get(&key) {
                    break hit.clone();
                }
                if k == 0 {
                    break self.maps[letters[0] as usize].truncate_to_bound(bound(0, self));
                }
                k -= 1;
            };
            for j in k + 1..=last {
                let b = bound(j, self);
                acc = acc.mul_truncated(&self.maps[letters[j] as usize], b);
                self.cache
                    .insert((Word::from_letters(&letters[..=j]), b), acc.clone());
            }
            self.cache.insert(full_key.clone(), acc);
        }
        self.cache.get(&full_key)
    }
}

impl<R: Ring> NCSeries<R> {
    /// `self(maps)`: every letter `z_i` replaced by `maps[i]`, order kept.
    ///
    /// Fails when a map has a constant term, since the substitution would not
    /// respect the degree filtration.
    pub fn compose(&self, maps: &[NCSeries<R>]) -> Result<NCSeries<R>> {
        Composer::new(maps)?.compose(self)
    }
}
