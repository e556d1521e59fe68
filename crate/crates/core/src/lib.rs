//! Control of asynchronous Boolean networks through attractors.
//!
//! The crate computes attractors and basins of the explicit asynchronous
//! transition system, minimal one-step controls (instantaneous, temporary
//! and permanent) between attractors, and attractor-based sequential control
//! paths. The [`oracle`] module re-derives the same answers by brute force
//! and is meant for testing.

pub mod dynamics;
mod error;
pub mod model;
pub mod onestep;
pub mod oracle;
pub mod sequential;

pub use dynamics::{Attractor, BasinReport, StateSet, TransitionSystem, DEFAULT_MAX_NODES};
pub use error::{Error, Result};
pub use model::{
    flips_for, hamming, parse_network, restrict, BooleanExpr, BooleanNetwork, Control,
    ControlledNetwork, NodeId, State,
};
pub use onestep::{Analysis, ControlQuery, ControlSolution, OneStepMode, SourcePolicy};
pub use sequential::{ControlPath, PathLedger, SequentialMode, SequentialQuery};
