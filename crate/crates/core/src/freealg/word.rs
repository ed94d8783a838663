use std::fmt;

use smallvec::SmallVec;

/// A monomial in the free monoid on `n` letters.
///
/// Letters are 0-based variable indices (`0` is `z_1`). The empty word is
/// the monomial `1`. The derived ordering is lexicographic, which together
/// with bucketing by length gives the degree-lexicographic order used for
/// every serialized series.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(i: u8) -> Self {
        let mut s = SmallVec::new();
        s.push(i);
        Self(s)
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Self(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut s = SmallVec::with_capacity(self.0.len() + other.0.len());
        s.extend_from_slice(&self.0);
        s.extend_from_slice(&other.0);
        Word(s)
    }

    /// `self[..pos] · middle · self[pos + 1..]`.
    pub fn replace_at(&self, pos: usize, middle: &Word) -> Word {
        let mut s = SmallVec::with_capacity(self.0.len() + middle.0.len());
        s.extend_from_slice(&self.0[..pos]);
        s.extend_from_slice(&middle.0);
        s.extend_from_slice(&self.0[pos + 1..]);
        Word(s)
    }

    /// Exponent vector of the commutative image.
    pub fn multidegree(&self, arity: usize) -> Vec<u32> {
        let mut e = vec![0; arity];
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        e
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "z{}", l + 1)?;
        }
        Ok(())
    }
}
