//! Asynchronous dynamics: successors, reachability, attractors and basins.
//!
//! Everything here works on an explicit transition system whose vertices are
//! the `2^n` states (or the states admitted by a control). Self-loops are
//! reported by [`TransitionSystem::successors`] but otherwise ignored, since
//! they never change reachability or bottomness of a component.

mod attractor;
mod basins;
mod scc;
mod set;
mod system;

pub use crate::model::State;
pub use attractor::{Attractor, BasinReport};
pub use set::StateSet;
pub use system::{TransitionSystem, DEFAULT_MAX_NODES, HARD_MAX_NODES};
