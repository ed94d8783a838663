//! Inversion engines for `F = z - H` with `o(H) >= 2`.
//!
//! All engines return the inverse in the form `z + M`; they differ in how
//! `M` is produced and in which characteristics they apply. The tree
//! engine lives in [`crate::trees`] and the deformation readout in
//! [`crate::deformation`].

mod charp;
mod fixed_point;
mod nseq;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use charp::{
    alt_recurrent_step, charp_lift_n_sequence, invert_charp_direct, invert_charp_lift, lift_h,
    reduce_series, LiftOptions, LiftedMap,
};
pub use fixed_point::{fixed_point_m, invert_fixed_point};
pub use nseq::{
    c_seq, convolution, invert_recurrent, n_seq_recurrent, recurrent_step, terms_needed, NSequence,
};
pub use verify::{verify_inverse, InverseReport, ResidualTerm, VerifySummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    FixedPoint,
    Recurrent,
    Tree,
    CharpDirect,
    CharpLift,
}

impl Engine {
    pub const ALL: [Engine; 5] = [
        Engine::FixedPoint,
        Engine::Recurrent,
        Engine::Tree,
        Engine::CharpDirect,
        Engine::CharpLift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::FixedPoint => "fixed-point",
            Engine::Recurrent => "recurrent",
            Engine::Tree => "tree",
            Engine::CharpDirect => "charp-direct",
            Engine::CharpLift => "charp-lift",
        }
    }

    /// Whether the engine runs over a ring of this characteristic.
    pub fn supports(self, characteristic: u64) -> bool {
        match self {
            Engine::FixedPoint => true,
            Engine::Recurrent | Engine::Tree => characteristic == 0,
            Engine::CharpDirect | Engine::CharpLift => characteristic != 0,
        }
    }

    pub fn for_characteristic(characteristic: u64) -> Vec<Engine> {
        Self::ALL
            .into_iter()
            .filter(|e| e.supports(characteristic))
            .collect()
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|e| e.name()).collect();
                format!("unknown engine {s:?}; expected one of {}", names.join(", "))
            })
    }
}
