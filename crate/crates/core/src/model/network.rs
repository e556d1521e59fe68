use std::collections::HashMap;
use std::fmt;

use super::{BooleanExpr, State};
use crate::{Error, Result};

/// Index of a node, 0-based, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNetwork {
    names: Vec<String>,
    functions: Vec<BooleanExpr>,
}

impl BooleanNetwork {
    pub fn new(names: Vec<String>, functions: Vec<BooleanExpr>) -> Result<BooleanNetwork> {
        if names.len() != functions.len() {
            return Err(Error::ArityMismatch {
                names: names.len(),
                functions: functions.len(),
            });
        }
        if names.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateNode {
                    name: name.clone(),
                    line: i + 1,
                });
            }
        }
        for f in &functions {
            if let Some(bad) = f.variables().into_iter().find(|v| v.0 >= names.len()) {
                return Err(Error::NodeOutOfRange {
                    index: bad.0,
                    nodes: names.len(),
                });
            }
        }
        Ok(BooleanNetwork { names, functions })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.0]
    }

    pub fn functions(&self) -> &[BooleanExpr] {
        &self.functions
    }

    pub fn function(&self, node: NodeId) -> &BooleanExpr {
        &self.functions[node.0]
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.len()).map(NodeId)
    }

    /// Number of regulator-to-target edges of the regulatory graph.
    pub fn edge_count(&self) -> usize {
        self.functions.iter().map(|f| f.variables().len()).sum()
    }

    /// Values of all update functions at `s`, packed like a state.
    pub fn image(&self, s: State) -> State {
        let mut bits = 0u32;
        for f in &self.functions {
            bits = (bits << 1) | f.evaluate(s) as u32;
        }
        State::new(bits, self.len())
    }
}

impl fmt::Display for BooleanNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, func) in self.names.iter().zip(&self.functions) {
            writeln!(f, "{} = {}", name, func.display(&self.names))?;
        }
        Ok(())
    }
}
