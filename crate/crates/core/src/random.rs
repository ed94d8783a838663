//! Seeded generators for random test instances.
//!
//! Everything is drawn from a ChaCha stream seeded by a single `u64`, so a
//! seed reproduces an instance on every platform. Polynomials are sparse:
//! a handful of words, each chosen uniformly among words of a uniformly
//! chosen degree, with small nonzero integer (or, in characteristic 0,
//! rational) coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deformation::{from_t_coefficients, TSeries};
use crate::freealg::{Derivation, NCSeries, Word};
use crate::rings::{Ring, TQuotient};

/// A seeded random stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for `(seed, label, index)`.
    pub fn derived(seed: u64, label: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(label);
        rng.set_word_pos(u128::from(index) << 20);
        Self { rng }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }

    /// A nonzero coefficient: `±1..=±5`, divided by `1..=3` in characteristic 0.
    pub fn coeff<R: Ring>(&mut self, ring: &R) -> R::Elem {
        loop {
            let mut n = self.int(1, 5);
            if self.rng.gen_bool(0.5) {
                n = -n;
            }
            let mut c = ring.from_i64(n);
            if ring.characteristic() == 0 {
                let den = self.int(1, 3);
                c = ring
                    .div_by_int(&c, den)
                    .expect("small denominators are units");
            }
            if !ring.is_zero(&c) {
                return c;
            }
        }
    }

    pub fn word(&mut self, arity: usize, degree: usize) -> Word {
        let letters: Vec<u8> = (0..degree)
            .map(|_| self.range(0, arity - 1) as u8)
            .collect();
        Word::from_letters(&letters)
    }

    /// Up to `terms` random words with degrees in `lo..=hi`.
    pub fn series<R: Ring>(
        &mut self,
        ring: &R,
        arity: usize,
        degree: usize,
        lo: usize,
        hi: usize,
        terms: usize,
    ) -> NCSeries<R> {
        let mut s = NCSeries::zero(ring.clone(), arity, degree);
        for _ in 0..terms {
            let d = self.range(lo, hi);
            let w = self.word(arity, d);
            let c = self.coeff(ring);
            s.add_term(w, c);
        }
        s
    }

    /// A random `H` with `1..=3` terms of degree `2..=max_degree` per component.
    pub fn h<R: Ring>(
        &mut self,
        ring: &R,
        arity: usize,
        degree: usize,
        max_degree: usize,
    ) -> Vec<NCSeries<R>> {
        (0..arity)
            .map(|_| {
                let terms = self.range(1, 3);
                self.series(ring, arity, degree, 2, max_degree, terms)
            })
            .collect()
    }

    /// A random `H` homogeneous of degree `d`.
    pub fn homogeneous_h<R: Ring>(
        &mut self,
        ring: &R,
        arity: usize,
        degree: usize,
        d: usize,
    ) -> Vec<NCSeries<R>> {
        (0..arity)
            .map(|_| {
                let terms = self.range(1, 3);
                self.series(ring, arity, degree, d, d, terms)
            })
            .collect()
    }

    /// A polynomial in `t` of `t`-degree at most `K` whose coefficients are
    /// sparse series of degree `2..=3`.
    pub fn h_t<R: Ring>(
        &mut self,
        tq: &TQuotient<R>,
        arity: usize,
        degree: usize,
    ) -> Vec<TSeries<R>> {
        let base = tq.base().clone();
        (0..arity)
            .map(|_| {
                let coeffs: Vec<_> = (0..=tq.order())
                    .map(|_| {
                        let terms = self.range(0, 2);
                        self.series(&base, arity, degree, 2, 3, terms)
                    })
                    .collect();
                from_t_coefficients(tq, &coeffs)
            })
            .collect()
    }

    /// A derivation whose components have order `>= 1` and degree `<= 2`.
    pub fn derivation<R: Ring>(&mut self, ring: &R, arity: usize, degree: usize) -> Derivation<R> {
        let comps = (0..arity)
            .map(|_| {
                let terms = self.range(1, 3);
                self.series(ring, arity, degree, 1, 2, terms)
            })
            .collect();
        Derivation::new(comps).expect("components share one shape")
    }
}
