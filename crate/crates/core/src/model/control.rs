use std::collections::BTreeSet;
use std::fmt;

use super::{BooleanExpr, BooleanNetwork, NodeId, State};
use crate::{Error, Result};

/// A pair of disjoint node sets, forced to 0 and to 1 respectively.
///
/// Applied to a state, a control flips every listed node, so each node of
/// the zero set must currently be 1 and each node of the one set 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    zero: BTreeSet<NodeId>,
    one: BTreeSet<NodeId>,
}

impl Control {
    pub fn new(
        zero: impl IntoIterator<Item = NodeId>,
        one: impl IntoIterator<Item = NodeId>,
    ) -> Result<Control> {
        let zero: BTreeSet<NodeId> = zero.into_iter().collect();
        let one: BTreeSet<NodeId> = one.into_iter().collect();
        if let Some(node) = zero.intersection(&one).next() {
            return Err(Error::OverlappingControl(node.0));
        }
        Ok(Control { zero, one })
    }

    pub fn empty() -> Control {
        Control::default()
    }

    pub fn zero_set(&self) -> &BTreeSet<NodeId> {
        &self.zero
    }

    pub fn one_set(&self) -> &BTreeSet<NodeId> {
        &self.one
    }

    pub fn size(&self) -> usize {
        self.zero.len() + self.one.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// All controlled nodes in ascending order.
    pub fn nodes(&self) -> BTreeSet<NodeId> {
        self.zero.union(&self.one).copied().collect()
    }

    /// Value the control assigns to `node`, if it controls it.
    pub fn value(&self, node: NodeId) -> Option<bool> {
        if self.one.contains(&node) {
            Some(true)
        } else if self.zero.contains(&node) {
            Some(false)
        } else {
            None
        }
    }

    /// `(node, value)` pairs in node order.
    pub fn assignments(&self) -> Vec<(NodeId, bool)> {
        let mut out: Vec<(NodeId, bool)> = self
            .zero
            .iter()
            .map(|&n| (n, false))
            .chain(self.one.iter().map(|&n| (n, true)))
            .collect();
        out.sort();
        out
    }

    pub fn check_range(&self, nodes: usize) -> Result<()> {
        match self.zero.iter().chain(&self.one).find(|n| n.0 >= nodes) {
            Some(n) => Err(Error::NodeOutOfRange { index: n.0, nodes }),
            None => Ok(()),
        }
    }

    /// Mask of the controlled nodes within a state of `width` nodes.
    pub fn fixed_mask(&self, width: usize) -> u32 {
        self.zero
            .iter()
            .chain(&self.one)
            .fold(0, |m, &n| m | State::node_mask(width, n))
    }

    /// Bits the controlled nodes are held at (only meaningful under `fixed_mask`).
    pub fn fixed_values(&self, width: usize) -> u32 {
        self.one
            .iter()
            .fold(0, |m, &n| m | State::node_mask(width, n))
    }

    /// Applies the control to `s` by flipping every controlled node.
    pub fn apply(&self, s: State) -> Result<State> {
        for &n in &self.zero {
            if !s.get(n) {
                return Err(Error::InconsistentControl {
                    node: n.0,
                    value: 0,
                });
            }
        }
        for &n in &self.one {
            if s.get(n) {
                return Err(Error::InconsistentControl {
                    node: n.0,
                    value: 1,
                });
            }
        }
        Ok(self.force(s))
    }

    /// Sets every controlled node to its control value, whatever it held.
    ///
    /// Agrees with [`Control::apply`] whenever the latter succeeds.
    pub fn force(&self, s: State) -> State {
        let w = s.width();
        State::new((s.bits() & !self.fixed_mask(w)) | self.fixed_values(w), w)
    }

    /// Whether `s` lies in the restricted state space of the control.
    pub fn admits(&self, s: State) -> bool {
        let w = s.width();
        s.bits() & self.fixed_mask(w) == self.fixed_values(w)
    }

    /// The control restricted to nodes not controlled by `other`.
    pub fn minus(&self, other: &Control) -> Control {
        let drop = other.nodes();
        Control {
            zero: self.zero.difference(&drop).copied().collect(),
            one: self.one.difference(&drop).copied().collect(),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ControlDisplay {
            control: self,
            names,
        }
    }
}

struct ControlDisplay<'a> {
    control: &'a Control,
    names: &'a [String],
}

impl fmt::Display for ControlDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, v)) in self.control.assignments().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.names[n.0], v as u8)?;
        }
        f.write_str("}")
    }
}

/// The unique control that flips exactly `nodes` when applied to `s`.
pub fn flips_for(s: State, nodes: impl IntoIterator<Item = NodeId>) -> Control {
    let mut c = Control::empty();
    for n in nodes {
        if s.get(n) {
            c.zero.insert(n);
        } else {
            c.one.insert(n);
        }
    }
    c
}

/// A network whose controlled nodes have constant update functions.
#[derive(Debug, Clone)]
pub struct ControlledNetwork<'a> {
    base: &'a BooleanNetwork,
    control: Control,
    functions: Vec<BooleanExpr>,
}

/// Builds the network `g` under control `c`.
pub fn restrict<'a>(g: &'a BooleanNetwork, c: &Control) -> Result<ControlledNetwork<'a>> {
    c.check_range(g.len())?;
    let functions = g
        .nodes()
        .map(|n| match c.value(n) {
            Some(v) => BooleanExpr::Const(v),
            None => g.function(n).clone(),
        })
        .collect();
    Ok(ControlledNetwork {
        base: g,
        control: c.clone(),
        functions,
    })
}

impl<'a> ControlledNetwork<'a> {
    pub fn base(&self) -> &'a BooleanNetwork {
        self.base
    }

    pub fn control(&self) -> &Control {
        &self.control
    }

    pub fn functions(&self) -> &[BooleanExpr] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Membership in the restricted state space.
    pub fn contains(&self, s: State) -> bool {
        self.control.admits(s)
    }

    /// The restricted state space, ascending.
    pub fn states(&self) -> Vec<State> {
        let n = self.len();
        (0..1u32 << n)
            .map(|b| State::new(b, n))
            .filter(|&s| self.contains(s))
            .collect()
    }

    pub fn image(&self, s: State) -> State {
        let mut bits = 0u32;
        for f in &self.functions {
            bits = (bits << 1) | f.evaluate(s) as u32;
        }
        State::new(bits, self.len())
    }

    /// The controlled network as an ordinary network.
    pub fn to_network(&self) -> BooleanNetwork {
        BooleanNetwork::new(self.base.names().to_vec(), self.functions.clone())
            .expect("restriction keeps the network well formed")
    }
}
