use super::derivation::coordinate_derivative;
use super::{Derivation, FormalMap, NCSeries};
use crate::error::{Error, Result};
use crate::rings::Ring;

/// A rectangular matrix of series sharing arity, truncation and ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix<R: Ring> {
    rows: usize,
    cols: usize,
    entries: Vec<NCSeries<R>>,
}

impl<R: Ring> SeriesMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<NCSeries<R>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidArgument("ragged matrix rows".into()));
            }
            entries.extend(row);
        }
        for e in &entries[1..] {
            entries[0].check_compatible(e)?;
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn identity(ring: R, arity: usize, degree: usize) -> Self {
        let mut entries = Vec::with_capacity(arity * arity);
        for i in 0..arity {
            for j in 0..arity {
                entries.push(if i == j {
                    NCSeries::one(ring.clone(), arity, degree)
                } else {
                    NCSeries::zero(ring.clone(), arity, degree)
                });
            }
        }
        Self {
            rows: arity,
            cols: arity,
            entries,
        }
    }

    /// `J̃U`, whose `(i, j)` entry is `[∂/∂z_i] U_j`.
    pub fn jacobian_tilde(us: &[NCSeries<R>]) -> Result<Self> {
        let first = us
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty series vector".into()))?;
        let n = first.arity();
        let rows = (0..n)
            .map(|i| us.iter().map(|u| coordinate_derivative(u, i)).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &NCSeries<R> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[NCSeries<R>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Every entry composed with `map`.
    pub fn compose(&self, map: &FormalMap<R>) -> Result<Self> {
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: map.substitute_all(&self.entries)?,
        })
    }

    /// The column of derivations `[row_i ∂/∂z]`; needs a square matrix
    /// whose column count equals the arity.
    pub fn row_derivations(&self) -> Result<Vec<Derivation<R>>> {
        (0..self.rows)
            .map(|i| Derivation::new(self.row(i).to_vec()))
            .collect()
    }

    /// The formal product of the column `[row_i ∂/∂z]` with the row `us`:
    /// entry `(i, j)` is `[row_i ∂/∂z] us_j`.
    pub fn apply_rows(&self, us: &[NCSeries<R>]) -> Result<Self> {
        let ds = self.row_derivations()?;
        let rows = ds
            .iter()
            .map(|d| d.apply_all(us))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.truncate(degree)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Rationals;

    #[test]
    fn jacobian_of_identity_is_identity() {
        let id = FormalMap::identity(Rationals, 3, 4);
        let j = SeriesMatrix::jacobian_tilde(id.components()).unwrap();
        assert_eq!(j, SeriesMatrix::identity(Rationals, 3, 4));
    }

    #[test]
    fn jacobian_of_square_uses_leibniz() {
        let x = NCSeries::var(Rationals, 2, 4, 0);
        let y = NCSeries::var(Rationals, 2, 4, 1);
        let j = SeriesMatrix::jacobian_tilde(&[&x * &x, y.clone()]).unwrap();
        assert_eq!(*j.get(0, 0), x.mul_by_int(2));
        assert!(j.get(1, 0).is_zero());
    }

    #[test]
    fn example_map_has_identity_jacobian() {
        let x = NCSeries::var(Rationals, 2, 5, 0);
        let y = NCSeries::var(Rationals, 2, 5, 1);
        let f1 = &x - &(&(&y * &x) - &(&x * &y));
        let j = SeriesMatrix::jacobian_tilde(&[f1, y]).unwrap();
        assert!(j.get(1, 0).is_zero());
        assert_eq!(j, SeriesMatrix::identity(Rationals, 2, 5));
    }
}
