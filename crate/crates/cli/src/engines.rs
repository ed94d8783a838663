use ncinvert::freealg::{FormalMap, NCSeries};
use ncinvert::inversion::{
    invert_charp_direct, invert_charp_lift, invert_fixed_point, invert_recurrent, Engine,
    LiftOptions,
};
use ncinvert::rings::{PrimeField, Rationals, Ring};
use ncinvert::trees::invert_tree;

use crate::error::CliError;

/// Rings the command line can run engines over.
pub trait EngineRing: Ring + 'static {
    fn run(&self, engine: Engine, h: &[NCSeries<Self>]) -> ncinvert::Result<FormalMap<Self>>;

    fn default_engine(&self) -> Engine;
}

fn unsupported<R: Ring>(engine: Engine, ring: &R) -> ncinvert::Error {
    ncinvert::Error::Characteristic {
        engine: engine.name(),
        characteristic: ring.characteristic(),
    }
}

impl EngineRing for Rationals {
    fn run(&self, engine: Engine, h: &[NCSeries<Self>]) -> ncinvert::Result<FormalMap<Self>> {
        match engine {
            Engine::FixedPoint => invert_fixed_point(h),
            Engine::Recurrent => invert_recurrent(h),
            Engine::Tree => invert_tree(h),
            _ => Err(unsupported(engine, self)),
        }
    }

    fn default_engine(&self) -> Engine {
        Engine::Recurrent
    }
}

impl EngineRing for PrimeField {
    fn run(&self, engine: Engine, h: &[NCSeries<Self>]) -> ncinvert::Result<FormalMap<Self>> {
        match engine {
            Engine::FixedPoint => invert_fixed_point(h),
            Engine::CharpDirect => Ok(invert_charp_direct(h)?.assemble(&1)),
            Engine::CharpLift => invert_charp_lift(h, LiftOptions::default()),
            _ => Err(unsupported(engine, self)),
        }
    }

    fn default_engine(&self) -> Engine {
        Engine::CharpDirect
    }
}

/// Rejects an engine that does not run over `ring`, naming the ones that do.
pub fn check_engine<R: Ring>(engine: Engine, ring: &R, ring_name: &str) -> Result<(), CliError> {
    if engine.supports(ring.characteristic()) {
        return Ok(());
    }
    let valid: Vec<_> = Engine::for_characteristic(ring.characteristic())
        .iter()
        .map(|e| e.name())
        .collect();
    Err(CliError::Precondition(format!(
        "engine {engine} does not run over {ring_name}; valid engines: {}",
        valid.join(", ")
    )))
}
