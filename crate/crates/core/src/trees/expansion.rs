use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::pbtree::{enumerate_up_to, PBTree};
use crate::error::{Error, Result};
use crate::freealg::{Derivation, FormalMap, NCSeries};
use crate::inversion::{terms_needed, NSequence};
use crate::rings::Ring;

/// Evaluates `N_T` for planar binary trees over a fixed `H`:
/// `N_leaf = H`, `N_(B₊(T₁, T₂)) = [N_T₁ ∂/∂z] N_T₂`.
///
/// Values are memoized by tree serialization. Trees are evaluated one
/// leaf count at a time, each layer in parallel against the finished
/// smaller layers.
pub struct TreeExpansion<R: Ring> {
    h: Vec<NCSeries<R>>,
    layers: Vec<Vec<PBTree>>,
    memo: HashMap<String, Vec<NCSeries<R>>>,
}

impl<R: Ring> TreeExpansion<R> {
    pub fn new(h: &[NCSeries<R>]) -> Result<Self> {
        FormalMap::from_h(h.to_vec())?;
        let leaf = PBTree::leaf();
        let mut memo = HashMap::new();
        memo.insert(leaf.serialize(), h.to_vec());
        Ok(Self {
            h: h.to_vec(),
            layers: vec![vec![leaf]],
            memo,
        })
    }

    pub fn h(&self) -> &[NCSeries<R>] {
        &self.h
    }

    fn ensure_layers(&mut self, m: usize) -> Result<()> {
        if self.layers.len() >= m {
            return Ok(());
        }
        self.layers = enumerate_up_to(m);
        for k in 2..=m {
            let pending: Vec<&PBTree> = self.layers[k - 1]
                .iter()
                .filter(|t| !self.memo.contains_key(&t.serialize()))
                .collect();
            let memo = &self.memo;
            let values = pending
                .par_iter()
                .map(|t| {
                    let (l, r) = t.children().expect("k >= 2 leaves");
                    let value = Derivation::new(memo[&l.serialize()].clone())?
                        .apply_all(&memo[&r.serialize()])?;
                    Ok((t.serialize(), value))
                })
                .collect::<Result<Vec<_>>>()?;
            self.memo.extend(values);
        }
        Ok(())
    }

    /// `N_T`.
    pub fn n_tree(&mut self, tree: &PBTree) -> Result<Vec<NCSeries<R>>> {
        self.ensure_layers(tree.leaves())?;
        Ok(self.memo[&tree.serialize()].clone())
    }

    /// `N_[m] = Σ_{l(T)=m} N_T / T̂!`.
    pub fn nm(&mut self, m: usize) -> Result<Vec<NCSeries<R>>> {
        let ring = self.h[0].ring().clone();
        let characteristic = ring.characteristic();
        if characteristic != 0 {
            return Err(Error::Characteristic {
                engine: "tree",
                characteristic,
            });
        }
        if m == 0 {
            return Err(Error::InvalidArgument("N_[m] needs m >= 1".into()));
        }
        self.ensure_layers(m)?;
        // Trees sharing a factorial are summed before the single division.
        let mut by_factorial: BTreeMap<BigUint, Vec<NCSeries<R>>> = BTreeMap::new();
        for t in &self.layers[m - 1] {
            let value = &self.memo[&t.serialize()];
            let slot = by_factorial
                .entry(t.reduced_factorial())
                .or_insert_with(|| self.h.iter().map(NCSeries::zero_like).collect());
            for (s, v) in slot.iter_mut().zip(value) {
                s.add_assign_unchecked(v);
            }
        }
        let mut acc: Vec<NCSeries<R>> = self.h.iter().map(NCSeries::zero_like).collect();
        for (f, sums) in by_factorial {
            let weight = ring.from_rational(&BigRational::new(BigInt::one(), f.into()))?;
            for (a, s) in acc.iter_mut().zip(&sums) {
                a.add_assign_unchecked(&s.scale(&weight));
            }
        }
        Ok(acc)
    }

    /// `N_[1..=D-1]` by the tree expansion.
    pub fn n_sequence(&mut self) -> Result<NSequence<R>> {
        let count = terms_needed(self.h[0].degree());
        let terms = (1..=count)
            .map(|m| self.nm(m))
            .collect::<Result<Vec<_>>>()?;
        NSequence::from_terms(terms)
    }
}

/// `N_[m]` of `H` by the tree expansion.
pub fn tree_expansion_nm<R: Ring>(h: &[NCSeries<R>], m: usize) -> Result<Vec<NCSeries<R>>> {
    TreeExpansion::new(h)?.nm(m)
}

/// The inverse of `z - H` assembled from tree-expansion terms.
pub fn invert_tree<R: Ring>(h: &[NCSeries<R>]) -> Result<FormalMap<R>> {
    let seq = TreeExpansion::new(h)?.n_sequence()?;
    Ok(seq.assemble(&seq.ring().one()))
}

/// `(m, Σ_{l(T)=m} 1/T̂!)` for `m = 1..=m_max`.
pub fn factorial_identity_check(m_max: usize) -> Vec<(usize, BigRational)> {
    enumerate_up_to(m_max)
        .into_iter()
        .enumerate()
        .map(|(i, layer)| {
            let sum = layer
                .par_iter()
                .map(|t| BigRational::new(BigInt::one(), t.reduced_factorial().into()))
                .reduce(BigRational::zero, |a, b| a + b);
            (i + 1, sum)
        })
        .collect()
}

/// Whether `a(s) = Σ a_k s^k` satisfies `a' = a²` and `a_0 = 1` through the
/// given coefficients: `(k + 1) a_(k+1) = Σ_{i+j=k} a_i a_j`.
pub fn gf_identity_holds(a: &[BigRational]) -> bool {
    if a.first() != Some(&BigRational::one()) {
        return false;
    }
    (0..a.len().saturating_sub(1)).all(|k| {
        let lhs = BigRational::from_integer(BigInt::from(k + 1)) * &a[k + 1];
        let rhs: BigRational = (0..=k).map(|i| &a[i] * &a[k - i]).sum();
        lhs == rhs
    })
}

/// The generating-function check on the tree sums for `m <= m_max`.
pub fn gf_identity_check(m_max: usize) -> bool {
    let a: Vec<BigRational> = factorial_identity_check(m_max)
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    gf_identity_holds(&a)
}
