use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::Ring;

/// A truncated commutative polynomial keyed by exponent vectors.
#[derive(Debug, Clone)]
pub struct CommPoly<R: Ring> {
    ring: R,
    arity: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, R::Elem>,
}

impl<R: Ring> PartialEq for CommPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.degree == other.degree && self.terms == other.terms
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommPolyJson {
    pub arity: usize,
    pub degree: usize,
    pub terms: Vec<CommTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommTermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl<R: Ring> CommPoly<R> {
    pub fn zero(ring: R, arity: usize, degree: usize) -> Self {
        Self {
            ring,
            arity,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R, arity: usize, degree: usize) -> Self {
        let mut p = Self::zero(ring, arity, degree);
        let one = p.ring.one();
        p.add_term(vec![0; arity], one);
        p
    }

    pub fn var(ring: R, arity: usize, degree: usize, i: usize) -> Self {
        let mut p = Self::zero(ring, arity, degree);
        let mut e = vec![0; arity];
        e[i] = 1;
        let one = p.ring.one();
        p.add_term(e, one);
        p
    }

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
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R::Elem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exponents: &[u32]) -> R::Elem {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c` to the coefficient of `x^exponents`; terms above the
    /// truncation degree are dropped.
    pub fn add_term(&mut self, exponents: Vec<u32>, c: R::Elem) {
        debug_assert_eq!(exponents.len(), self.arity);
        if total(&exponents) > self.degree || self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(v) => {
                self.ring.add_assign(v, &c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&exponents);
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
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
        Ok(())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(v, c));
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, self.ring.mul_by_int(v, e[i] as i64));
            }
        }
        out
    }

    /// `self(ps)`, substituting `x_j ↦ ps[j]`.
    pub fn compose(&self, ps: &[CommPoly<R>]) -> Result<Self> {
        if ps.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: ps.len(),
            });
        }
        let target = ps
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty substitution".into()))?;
        for p in ps {
            target.check_compatible(p)?;
        }
        let mut powers: Vec<Vec<CommPoly<R>>> = ps
            .iter()
            .map(|_| {
                vec![CommPoly::one(
                    self.ring.clone(),
                    target.arity,
                    target.degree,
                )]
            })
            .collect();
        let mut out = target.zero_like();
        for (e, v) in &self.terms {
            let mut acc = CommPoly::one(self.ring.clone(), target.arity, target.degree);
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().unwrap() * &ps[j];
                    powers[j].push(next);
                }
                if k > 0 {
                    acc = &acc * &powers[j][k as usize];
                }
            }
            out = &out + &acc.scale(v);
        }
        Ok(out)
    }

    pub fn map_coeffs<S: Ring>(
        &self,
        ring: S,
        mut f: impl FnMut(&R::Elem) -> S::Elem,
    ) -> CommPoly<S> {
        let mut out = CommPoly::zero(ring, self.arity, self.degree);
        for (e, v) in &self.terms {
            let c = f(v);
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn to_json(&self) -> CommPolyJson {
        CommPolyJson {
            arity: self.arity,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| CommTermJson {
                    exponents: e.clone(),
                    coeff: self.ring.format(v),
                })
                .collect(),
        }
    }

    pub fn from_json(ring: R, json: &CommPolyJson) -> Result<Self> {
        let mut p = Self::zero(ring, json.arity, json.degree);
        for t in &json.terms {
            if t.exponents.len() != json.arity {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {:?} does not have length {}",
                    t.exponents, json.arity
                )));
            }
            let c = p.ring.parse(&t.coeff)?;
            p.add_term(t.exponents.clone(), c);
        }
        Ok(p)
    }
}

impl<R: Ring> std::ops::Add for &CommPoly<R> {
    type Output = CommPoly<R>;
    fn add(self, other: &CommPoly<R>) -> CommPoly<R> {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl<R: Ring> std::ops::Neg for &CommPoly<R> {
    type Output = CommPoly<R>;
    fn neg(self) -> CommPoly<R> {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), self.ring.neg(v));
        }
        out
    }
}

impl<R: Ring> std::ops::Sub for &CommPoly<R> {
    type Output = CommPoly<R>;
    fn sub(self, other: &CommPoly<R>) -> CommPoly<R> {
        self + &(-other)
    }
}

impl<R: Ring> std::ops::Mul for &CommPoly<R> {
    type Output = CommPoly<R>;
    fn mul(self, other: &CommPoly<R>) -> CommPoly<R> {
        let mut out = self.zero_like();
        for (a, x) in &self.terms {
            let da = total(a);
            for (b, y) in &other.terms {
                if da + total(b) > self.degree {
                    continue;
                }
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, self.ring.mul(x, y));
            }
        }
        out
    }
}
