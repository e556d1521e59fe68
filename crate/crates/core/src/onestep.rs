//! Minimal one-step control between two attractors.
//!
//! A candidate control is identified by the set of nodes it flips in the
//! source state. The three modes differ in the condition the flipped state
//! has to meet:
//!
//! * instantaneous: it lies in the strong basin of the target in the
//!   original system;
//! * temporary: within the system under the control it is committed to the
//!   target's strong basin restricted to the controlled state space, which
//!   must be non-empty;
//! * permanent: the target survives the control and, within the system under
//!   the control, the flipped state lies in the target's strong basin.
//!
//! Candidates are enumerated by increasing size. Supersets of a valid set are
//! skipped, so every reported set is subset-minimal.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::dynamics::{Attractor, StateSet, TransitionSystem};
use crate::model::{flips_for, BooleanNetwork, Control, NodeId, State};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OneStepMode {
    Instantaneous,
    Temporary,
    Permanent,
}

impl OneStepMode {
    pub const ALL: [OneStepMode; 3] = [
        OneStepMode::Instantaneous,
        OneStepMode::Temporary,
        OneStepMode::Permanent,
    ];

    pub fn abbreviation(self) -> &'static str {
        match self {
            OneStepMode::Instantaneous => "OI",
            OneStepMode::Temporary => "OT",
            OneStepMode::Permanent => "OP",
        }
    }
}

impl fmt::Display for OneStepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbreviation())
    }
}

/// Which states of a cyclic source attractor a control has to work from.
///
/// For fixed-point attractors both policies coincide.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum SourcePolicy {
    /// The member with the smallest integer encoding.
    #[default]
    Designated,
    /// Every member. The control is derived from the designated member and
    /// forced onto the others.
    AllStates,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlQuery {
    pub source: usize,
    pub target: usize,
    pub mode: OneStepMode,
    pub budget: usize,
    pub forbidden: BTreeSet<NodeId>,
    pub policy: SourcePolicy,
}

impl ControlQuery {
    pub fn new(source: usize, target: usize, mode: OneStepMode, budget: usize) -> ControlQuery {
        ControlQuery {
            source,
            target,
            mode,
            budget,
            forbidden: BTreeSet::new(),
            policy: SourcePolicy::Designated,
        }
    }

    pub fn forbid(mut self, nodes: impl IntoIterator<Item = NodeId>) -> ControlQuery {
        self.forbidden.extend(nodes);
        self
    }

    pub fn policy(mut self, policy: SourcePolicy) -> ControlQuery {
        self.policy = policy;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlSolution {
    pub control: Control,
    pub size: usize,
    pub mode: OneStepMode,
}

/// A network together with its transition system, attractors and lazily
/// computed basins.
pub struct Analysis {
    network: BooleanNetwork,
    system: TransitionSystem,
    attractors: Vec<Attractor>,
    weak: Vec<OnceLock<StateSet>>,
    strong: Vec<OnceLock<StateSet>>,
}

impl Analysis {
    pub fn new(network: BooleanNetwork, max_nodes: usize) -> Result<Analysis> {
        let system = TransitionSystem::new(&network, max_nodes)?;
        let attractors = system.attractors();
        let count = attractors.len();
        Ok(Analysis {
            network,
            system,
            attractors,
            weak: (0..count).map(|_| OnceLock::new()).collect(),
            strong: (0..count).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn network(&self) -> &BooleanNetwork {
        &self.network
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    pub fn attractors(&self) -> &[Attractor] {
        &self.attractors
    }

    pub fn attractor(&self, id: usize) -> Result<&Attractor> {
        self.attractors.get(id).ok_or(Error::UnknownAttractor(id))
    }

    /// Attaches user labels to attractors.
    pub fn set_name(&mut self, id: usize, name: impl Into<String>) -> Result<()> {
        let a = self
            .attractors
            .get_mut(id)
            .ok_or(Error::UnknownAttractor(id))?;
        a.name = Some(name.into());
        Ok(())
    }

    pub fn weak_basin(&self, id: usize) -> &StateSet {
        self.weak[id].get_or_init(|| self.system.weak_basin(self.attractors[id].states()))
    }

    pub fn strong_basin(&self, id: usize) -> &StateSet {
        self.strong[id].get_or_init(|| self.system.strong_basin(&self.attractors[id]))
    }

    fn controlled(&self, c: &Control) -> TransitionSystem {
        self.system
            .under_control(c)
            .expect("controls are checked against the network size")
    }

    pub fn is_valid_instantaneous(&self, c: &Control, s: State, target: usize) -> bool {
        self.strong_basin(target).contains(c.force(s))
    }

    pub fn is_valid_temporary(&self, c: &Control, s: State, target: usize) -> bool {
        let basin = self.strong_basin(target);
        let ts = self.controlled(c);
        ts.commits_to(c.force(s), |b| basin.contains_bits(b) && ts.admits_bits(b))
    }

    pub fn is_valid_permanent(&self, c: &Control, s: State, target: usize) -> bool {
        let at = &self.attractors[target];
        if !at.members().iter().all(|&m| c.admits(m)) {
            return false;
        }
        let ts = self.controlled(c);
        ts.commits_to(c.force(s), |b| at.states().contains_bits(b))
    }

    pub fn is_valid(&self, mode: OneStepMode, c: &Control, s: State, target: usize) -> bool {
        match mode {
            OneStepMode::Instantaneous => self.is_valid_instantaneous(c, s, target),
            OneStepMode::Temporary => self.is_valid_temporary(c, s, target),
            OneStepMode::Permanent => self.is_valid_permanent(c, s, target),
        }
    }

    /// The control flipping `nodes` in the designated source state, if it
    /// passes the mode's condition under `policy`.
    pub fn candidate(
        &self,
        source: usize,
        target: usize,
        mode: OneStepMode,
        policy: SourcePolicy,
        nodes: &[NodeId],
    ) -> Option<Control> {
        let src = &self.attractors[source];
        let c = flips_for(src.representative(), nodes.iter().copied());
        let ok = match policy {
            SourcePolicy::Designated => self.is_valid(mode, &c, src.representative(), target),
            SourcePolicy::AllStates => src
                .members()
                .iter()
                .all(|&s| self.is_valid(mode, &c, s, target)),
        };
        ok.then_some(c)
    }

    fn check_query(&self, q: &ControlQuery) -> Result<()> {
        self.attractor(q.source)?;
        self.attractor(q.target)?;
        if q.source == q.target {
            return Err(Error::SameSourceTarget);
        }
        if let Some(n) = q.forbidden.iter().find(|n| n.0 >= self.network.len()) {
            return Err(Error::NodeOutOfRange {
                index: n.0,
                nodes: self.network.len(),
            });
        }
        Ok(())
    }

    /// All subset-minimal controls of at most `q.budget` nodes, none of them
    /// forbidden, sorted by size and then by node list.
    pub fn minimal_controls(&self, q: &ControlQuery) -> Result<Vec<ControlSolution>> {
        self.check_query(q)?;
        let allowed: Vec<NodeId> = self
            .network
            .nodes()
            .filter(|n| !q.forbidden.contains(n))
            .collect();
        let width = self.network.len();
        let mut hits: Vec<u32> = Vec::new();
        let mut out = Vec::new();
        for size in 0..=q.budget.min(allowed.len()) {
            for combo in allowed.iter().copied().combinations(size) {
                let mask = combo
                    .iter()
                    .fold(0u32, |m, &n| m | State::node_mask(width, n));
                if hits.iter().any(|&h| h & !mask == 0) {
                    continue;
                }
                if let Some(control) = self.candidate(q.source, q.target, q.mode, q.policy, &combo)
                {
                    hits.push(mask);
                    out.push(ControlSolution {
                        size: control.size(),
                        control,
                        mode: q.mode,
                    });
                }
            }
        }
        // Combinations come out in lexicographic node order within each size.
        Ok(out)
    }

    /// Size of the smallest one-step control, searching up to all nodes.
    pub fn minimal_control_size(&self, q: &ControlQuery) -> Result<Option<usize>> {
        let full = ControlQuery {
            budget: self.network.len(),
            ..q.clone()
        };
        self.check_query(&full)?;
        let allowed: Vec<NodeId> = self
            .network
            .nodes()
            .filter(|n| !full.forbidden.contains(n))
            .collect();
        for size in 0..=allowed.len() {
            for combo in allowed.iter().copied().combinations(size) {
                if self
                    .candidate(full.source, full.target, full.mode, full.policy, &combo)
                    .is_some()
                {
                    return Ok(Some(size));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_network;
    use crate::DEFAULT_MAX_NODES;

    fn example() -> Analysis {
        let g = parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap();
        Analysis::new(g, DEFAULT_MAX_NODES).unwrap()
    }

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn flips(s: &str, nodes: &[usize]) -> Control {
        flips_for(st(s), nodes.iter().map(|&i| NodeId(i)))
    }

    fn node_sets(sols: &[ControlSolution]) -> Vec<Vec<usize>> {
        sols.iter()
            .map(|s| s.control.nodes().into_iter().map(|n| n.0).collect())
            .collect()
    }

    #[test]
    fn instantaneous_validity() {
        let a = example();
        assert!(a.is_valid_instantaneous(&flips("000", &[0, 1, 2]), st("000"), 2));
        assert!(!a.is_valid_instantaneous(&flips("000", &[0]), st("000"), 1));
        // Already inside the target's strong basin.
        assert!(a.is_valid_instantaneous(&Control::empty(), st("001"), 0));
    }

    #[test]
    fn temporary_validity() {
        let a = example();
        assert!(a.is_valid_temporary(&flips("000", &[0]), st("000"), 1));
        assert!(a.is_valid_temporary(&flips("000", &[1]), st("000"), 1));
        assert!(a.is_valid_temporary(&flips("110", &[2]), st("110"), 2));
        assert!(!a.is_valid_temporary(&flips("000", &[2]), st("000"), 2));
    }

    #[test]
    fn permanent_validity() {
        let a = example();
        assert!(a.is_valid_permanent(&flips("000", &[0]), st("000"), 1));
        assert!(a.is_valid_permanent(&flips("110", &[2]), st("110"), 2));
        // Holding x3 at 1 excludes A2 = {110}.
        assert!(!a.is_valid_permanent(&flips("000", &[2]), st("000"), 1));
    }

    #[test]
    fn minimal_controls_examples() {
        let a = example();
        let ot = a
            .minimal_controls(&ControlQuery::new(0, 1, OneStepMode::Temporary, 3))
            .unwrap();
        assert_eq!(node_sets(&ot), [[0], [1]]);
        let oi = a
            .minimal_controls(&ControlQuery::new(0, 2, OneStepMode::Instantaneous, 3))
            .unwrap();
        assert_eq!(node_sets(&oi), [[0, 1, 2]]);
        let step = a
            .minimal_controls(&ControlQuery::new(1, 2, OneStepMode::Temporary, 1))
            .unwrap();
        assert_eq!(node_sets(&step), [[2]]);
    }

    #[test]
    fn budget_and_forbidden_nodes() {
        let a = example();
        let none = a
            .minimal_controls(&ControlQuery::new(0, 1, OneStepMode::Temporary, 0))
            .unwrap();
        assert!(none.is_empty());
        let q = ControlQuery::new(0, 1, OneStepMode::Temporary, 3).forbid([NodeId(0)]);
        assert_eq!(node_sets(&a.minimal_controls(&q).unwrap()), [[1]]);
        assert_eq!(
            a.minimal_controls(&ControlQuery::new(0, 0, OneStepMode::Temporary, 3)),
            Err(Error::SameSourceTarget)
        );
        assert_eq!(
            a.minimal_controls(&ControlQuery::new(0, 7, OneStepMode::Temporary, 3)),
            Err(Error::UnknownAttractor(7))
        );
    }

    #[test]
    fn minimal_sizes() {
        let a = example();
        let size = |s, t, m| {
            a.minimal_control_size(&ControlQuery::new(s, t, m, 0))
                .unwrap()
        };
        assert_eq!(size(0, 2, OneStepMode::Instantaneous), Some(3));
        assert_eq!(size(0, 2, OneStepMode::Temporary), Some(2));
        assert_eq!(size(0, 1, OneStepMode::Permanent), Some(1));
    }
}
