use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::{bits_of, not_invertible, PrimeField, Ring, RingError};

pub type VarId = u32;

/// Names a lift variable by the coefficient it replaces: component `i` of a
/// map and the word whose coefficient it is.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftKey {
    pub component: usize,
    pub word: Vec<u8>,
}

impl fmt::Display for LiftKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.word.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "A{}[{}]", self.component + 1, letters.join("."))
    }
}

/// A commutative monomial: `(variable, exponent)` pairs sorted by variable,
/// exponents strictly positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(VarId, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Self(s)
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut out: SmallVec<[(VarId, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Self(out)
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// A polynomial with integer coefficients in commuting lift variables.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_empty())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// `ℤ[A]` for a growable set of lift variables `A`.
///
/// Variables are interned by [`LiftKey`], so the same key always yields the
/// same [`VarId`] within one ring and the substitution back to field values
/// can invert the lift exactly.
#[derive(Debug, Clone, Default)]
pub struct IntPolyRing {
    vars: Arc<Vec<LiftKey>>,
}

impl PartialEq for IntPolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl IntPolyRing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `key`, creating a fresh variable if needed.
    pub fn intern(&mut self, key: LiftKey) -> VarId {
        if let Some(pos) = self.vars.iter().position(|k| *k == key) {
            return pos as VarId;
        }
        Arc::make_mut(&mut self.vars).push(key);
        (self.vars.len() - 1) as VarId
    }

    pub fn var(&self, id: VarId) -> IntPoly {
        assert!(
            (id as usize) < self.vars.len(),
            "unknown lift variable {id}"
        );
        let mut p = IntPoly::default();
        p.add_term(Monomial::var(id), BigInt::one());
        p
    }

    pub fn key(&self, id: VarId) -> Option<&LiftKey> {
        self.vars.get(id as usize)
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Evaluates `q` at `assignment[var]`, reducing every integer mod `p`.
    pub fn reduce_mod_p(
        &self,
        q: &IntPoly,
        assignment: &BTreeMap<VarId, u64>,
        field: &PrimeField,
    ) -> Result<u64, RingError> {
        let mut acc = 0u64;
        for (mono, c) in q.terms() {
            let mut term = field.from_bigint(c);
            for &(v, e) in mono.pairs() {
                let value = assignment.get(&v).ok_or_else(|| {
                    RingError::UnassignedVariable(
                        self.key(v)
                            .map_or_else(|| format!("#{v}"), |k| k.to_string()),
                    )
                })?;
                term = field.mul(&term, &field.pow(value, e as u64));
            }
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }
}

impl Ring for IntPolyRing {
    type Elem = IntPoly;

    fn zero(&self) -> IntPoly {
        IntPoly::default()
    }

    fn one(&self) -> IntPoly {
        self.from_bigint(&BigInt::one())
    }

    fn is_zero(&self, x: &IntPoly) -> bool {
        x.terms.is_empty()
    }

    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    fn add_assign(&self, a: &mut IntPoly, b: &IntPoly) {
        for (m, c) in &b.terms {
            a.add_term(m.clone(), c.clone());
        }
    }

    fn neg(&self, a: &IntPoly) -> IntPoly {
        IntPoly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = IntPoly::default();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn from_bigint(&self, n: &BigInt) -> IntPoly {
        let mut p = IntPoly::default();
        p.add_term(Monomial::one(), n.clone());
        p
    }

    fn mul_by_int(&self, x: &IntPoly, m: i64) -> IntPoly {
        let m = BigInt::from(m);
        let mut out = IntPoly::default();
        for (mono, c) in &x.terms {
            out.add_term(mono.clone(), c * &m);
        }
        out
    }

    fn div_by_int(&self, x: &IntPoly, m: i64) -> Result<IntPoly, RingError> {
        let d = BigInt::from(m);
        if d.is_zero() {
            return Err(not_invertible(self, m));
        }
        let mut out = IntPoly::default();
        for (mono, c) in &x.terms {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return Err(not_invertible(self, m));
            }
            out.add_term(mono.clone(), q);
        }
        Ok(out)
    }

    fn format(&self, x: &IntPoly) -> String {
        let terms: Vec<String> = x
            .terms
            .iter()
            .map(|(m, c)| {
                let pairs: Vec<String> = m.0.iter().map(|(v, e)| format!("[{v}, {e}]")).collect();
                format!("[\"{c}\", [{}]]", pairs.join(", "))
            })
            .collect();
        format!("[{}]", terms.join(", "))
    }

    fn parse(&self, text: &str) -> Result<IntPoly, RingError> {
        let err = |reason: String| RingError::Parse {
            text: text.to_string(),
            reason,
        };
        let raw: Vec<(String, Vec<(VarId, u32)>)> =
            serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
        let mut out = IntPoly::default();
        for (c, pairs) in raw {
            let c: BigInt = c.parse().map_err(|_| err(format!("bad integer {c:?}")))?;
            if pairs.iter().any(|&(v, _)| v as usize >= self.vars.len()) {
                return Err(err("unknown lift variable".into()));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }

    fn coeff_bits(&self, x: &IntPoly) -> u64 {
        x.terms.values().map(bits_of).max().unwrap_or(0)
    }
}

impl IntPoly {
    /// The value of a constant polynomial as an `i64`, if it is one.
    pub fn as_small_constant(&self) -> Option<i64> {
        if !self.is_constant() {
            return None;
        }
        match self.terms.values().next() {
            None => Some(0),
            Some(c) if c.abs().bits() < 63 => c.to_i64(),
            Some(_) => None,
        }
    }
}
