//! Exact inversion of formal maps `F(z) = z - H(z)` in noncommuting
//! variables, truncated at a fixed total degree.

pub mod commutative;
pub mod deformation;
pub mod error;
pub mod freealg;
pub mod inversion;
pub mod random;
pub mod rings;
pub mod suite;
pub mod trees;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/inversion.md")]
    mod inversion {}
    #[doc = include_str!("../../../book/src/characteristic_p.md")]
    mod characteristic_p {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/deformation.md")]
    mod deformation {}
    #[doc = include_str!("../../../book/src/commutative.md")]
    mod commutative {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
