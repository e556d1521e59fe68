use std::collections::BTreeSet;

use super::StateSet;
use crate::model::{NodeId, State};

/// A bottom strongly connected component of a transition system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attractor {
    pub id: usize,
    pub name: Option<String>,
    states: StateSet,
    members: Vec<State>,
}

impl Attractor {
    /// `members` must be non-empty, sorted and of equal width.
    pub fn new(id: usize, members: Vec<State>) -> Attractor {
        assert!(!members.is_empty(), "attractors are non-empty");
        let width = members[0].width();
        Attractor {
            id,
            name: None,
            states: StateSet::from_states(width, members.iter().copied()),
            members,
        }
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    /// Member states, ascending.
    pub fn members(&self) -> &[State] {
        &self.members
    }

    /// The member with the smallest integer encoding.
    pub fn representative(&self) -> State {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, s: State) -> bool {
        self.states.contains(s)
    }

    /// Distinct value patterns the attractor takes on `nodes`.
    pub fn projection(&self, nodes: &BTreeSet<NodeId>) -> BTreeSet<Vec<bool>> {
        self.members
            .iter()
            .map(|s| nodes.iter().map(|&n| s.get(n)).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasinReport {
    pub attractor: usize,
    pub weak: StateSet,
    pub strong: StateSet,
}
