//! Boolean networks, controls and networks under control.
//!
//! Nodes are numbered densely in declaration order. A [`State`] prints
//! most-significant first, so `"110"` means the first two nodes are on and
//! the third is off.

mod control;
mod expr;
mod network;
mod parser;
mod state;

pub use control::{flips_for, restrict, Control, ControlledNetwork};
pub use expr::{BooleanExpr, ExprDisplay};
pub use network::{BooleanNetwork, NodeId};
pub use parser::parse_network;
pub use state::{hamming, State, MAX_WIDTH};
