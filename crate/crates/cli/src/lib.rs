//! Command-line front end: the map-file language, its printer and the
//! command implementations behind the `ncinvert` binary.

pub mod commands;
pub mod engines;
pub mod error;
pub mod expr;
pub mod pretty;
pub mod source;
