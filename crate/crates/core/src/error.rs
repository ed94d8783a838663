use thiserror::Error;

use crate::rings::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("truncation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("operands live over different coefficient rings")]
    RingMismatch,
    #[error("component {component} has a nonzero constant term")]
    ConstantTerm { component: usize },
    #[error("component {component} has order {order}, at least {required} is required")]
    OrderTooLow {
        component: usize,
        order: usize,
        required: usize,
    },
    #[error("component {component} does not have identity linear part")]
    LinearPart { component: usize },
    #[error("engine {engine} cannot run in characteristic {characteristic}")]
    Characteristic {
        engine: &'static str,
        characteristic: u64,
    },
    #[error("inverse check failed: {0}")]
    InverseCheck(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
