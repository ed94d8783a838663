use serde::Serialize;

use crate::error::Result;
use crate::freealg::{FormalMap, NCSeries, Word};
use crate::rings::Ring;

/// Residuals `F∘G - z` and `G∘F - z` of a candidate inverse pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseReport<R: Ring> {
    pub forward: Vec<NCSeries<R>>,
    pub backward: Vec<NCSeries<R>>,
}

/// One nonzero residual coefficient, for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualTerm {
    /// `"F∘G"` or `"G∘F"`.
    pub direction: &'static str,
    /// 1-based component index.
    pub component: usize,
    /// 1-based letters.
    pub word: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub verified: bool,
    pub first_failing_degree: Option<usize>,
    pub first_residual: Option<ResidualTerm>,
}

impl<R: Ring> InverseReport<R> {
    pub fn verified(&self) -> bool {
        self.forward
            .iter()
            .chain(&self.backward)
            .all(NCSeries::is_zero)
    }

    /// Lowest degree carrying a nonzero residual in either direction.
    pub fn first_failing_degree(&self) -> Option<usize> {
        self.forward
            .iter()
            .chain(&self.backward)
            .filter_map(NCSeries::order)
            .min()
    }

    /// The deg-lex first residual term of lowest degree, `F∘G` before `G∘F`.
    pub fn first_residual(&self) -> Option<ResidualTerm> {
        let d = self.first_failing_degree()?;
        let named = [("F∘G", &self.forward), ("G∘F", &self.backward)];
        for (direction, side) in named {
            for (i, s) in side.iter().enumerate() {
                if let Some((w, c)) = s.bucket(d).iter().next() {
                    return Some(ResidualTerm {
                        direction,
                        component: i + 1,
                        word: one_based(w),
                        coeff: s.ring().format(c),
                    });
                }
            }
        }
        None
    }

    pub fn summary(&self) -> VerifySummary {
        VerifySummary {
            verified: self.verified(),
            first_failing_degree: self.first_failing_degree(),
            first_residual: self.first_residual(),
        }
    }
}

fn one_based(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|&l| l as usize + 1).collect()
}

/// Composes both ways and subtracts the identity.
pub fn verify_inverse<R: Ring>(f: &FormalMap<R>, g: &FormalMap<R>) -> Result<InverseReport<R>> {
    Ok(InverseReport {
        forward: f.compose(g)?.identity_deviation(),
        backward: g.compose(f)?.identity_deviation(),
    })
}
