//! Truncated series in free noncommuting variables.
//!
//! A series is a finite map from words to coefficients with every word of
//! length at most the truncation degree `D`. Products, substitutions and
//! derivations drop anything above `D`, so every result is the exact
//! degree-`D` truncation of the corresponding untruncated operation.

mod compose;
mod derivation;
mod map;
mod matrix;
mod series;
mod word;

pub use compose::Composer;
pub use derivation::Derivation;
pub use map::{induced_action_on, star_action, FormalMap, MapForm};
pub use matrix::SeriesMatrix;
pub use series::{NCSeries, SeriesJson, TermJson};
pub use word::Word;

pub(crate) use map::check_order_two;
