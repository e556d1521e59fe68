//! Attractor-based sequential control.
//!
//! A path drives the network from a source attractor to a target attractor
//! through other attractors, applying one minimal one-step control per hop.
//! Paths are built backwards from the target. The first phase seeds, for
//! every attractor, the direct hops into the target that fit the budget. The
//! second phase repeatedly takes the attractors that gained a path in the
//! previous round as new targets and prepends a hop from every other
//! attractor, rejecting cycles and budget overruns. Only the source may
//! spend the full budget `k`; any other attractor may spend at most `k - 1`,
//! because reaching it costs at least one perturbation.
//!
//! In permanent mode a prepended control stays in force for the rest of the
//! path, so it is accepted only if the nodes it still holds agree with every
//! later attractor (see [`perm_control_validation`]).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::dynamics::Attractor;
use crate::model::{Control, NodeId};
use crate::onestep::{Analysis, ControlQuery, OneStepMode, SourcePolicy};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequentialMode {
    Instantaneous,
    Temporary,
    Permanent,
}

impl SequentialMode {
    pub const ALL: [SequentialMode; 3] = [
        SequentialMode::Instantaneous,
        SequentialMode::Temporary,
        SequentialMode::Permanent,
    ];

    /// The one-step control used for each hop.
    pub fn step_mode(self) -> OneStepMode {
        match self {
            SequentialMode::Instantaneous => OneStepMode::Instantaneous,
            SequentialMode::Temporary => OneStepMode::Temporary,
            SequentialMode::Permanent => OneStepMode::Permanent,
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            SequentialMode::Instantaneous => "ASI",
            SequentialMode::Temporary => "AST",
            SequentialMode::Permanent => "ASP",
        }
    }
}

impl fmt::Display for SequentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbreviation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialQuery {
    pub source: usize,
    pub target: usize,
    pub mode: SequentialMode,
    pub budget: usize,
    pub forbidden: BTreeSet<NodeId>,
    /// Attractors that may serve as intermediates; `None` allows all.
    pub allowed_intermediates: Option<BTreeSet<usize>>,
    /// Whether direct source-to-target hops are reported as paths.
    pub include_one_step: bool,
    pub policy: SourcePolicy,
}

impl SequentialQuery {
    pub fn new(
        source: usize,
        target: usize,
        mode: SequentialMode,
        budget: usize,
    ) -> SequentialQuery {
        SequentialQuery {
            source,
            target,
            mode,
            budget,
            forbidden: BTreeSet::new(),
            allowed_intermediates: None,
            include_one_step: false,
            policy: SourcePolicy::Designated,
        }
    }

    pub fn forbid(mut self, nodes: impl IntoIterator<Item = NodeId>) -> SequentialQuery {
        self.forbidden.extend(nodes);
        self
    }

    /// Removes attractors from the set of admissible intermediates.
    pub fn exclude_intermediates(
        mut self,
        excluded: impl IntoIterator<Item = usize>,
        attractor_count: usize,
    ) -> SequentialQuery {
        let excluded: BTreeSet<usize> = excluded.into_iter().collect();
        let allowed = self
            .allowed_intermediates
            .unwrap_or_else(|| (0..attractor_count).collect());
        self.allowed_intermediates = Some(allowed.difference(&excluded).copied().collect());
        self
    }

    pub fn include_one_step(mut self, yes: bool) -> SequentialQuery {
        self.include_one_step = yes;
        self
    }

    pub fn policy(mut self, policy: SourcePolicy) -> SequentialQuery {
        self.policy = policy;
        self
    }

    fn may_pass(&self, attractor: usize) -> bool {
        self.allowed_intermediates
            .as_ref()
            .is_none_or(|s| s.contains(&attractor))
    }
}

/// A sequence of hops `source -> intermediates[0] -> ... -> target`, where
/// `controls[i]` drives the network into `intermediates[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ControlPath {
    pub mode: SequentialMode,
    pub source: usize,
    /// Visited attractors after the source; the last one is the target.
    pub intermediates: Vec<usize>,
    pub controls: Vec<Control>,
    pub total: usize,
}

impl ControlPath {
    pub fn target(&self) -> usize {
        *self
            .intermediates
            .last()
            .expect("paths have at least one hop")
    }

    /// Number of hops.
    pub fn len(&self) -> usize {
        self.controls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.controls.is_empty()
    }

    /// Whether the path passes through at least one intermediate attractor.
    pub fn is_sequential(&self) -> bool {
        self.intermediates.len() >= 2
    }

    /// Source followed by all visited attractors.
    pub fn attractor_sequence(&self) -> Vec<usize> {
        std::iter::once(self.source)
            .chain(self.intermediates.iter().copied())
            .collect()
    }

    fn sort_key(&self) -> (usize, usize, &[usize], &[Control]) {
        (self.total, self.len(), &self.intermediates, &self.controls)
    }
}

impl PartialOrd for ControlPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by total perturbations, then hop count, then attractors and controls.
impl Ord for ControlPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then(self.source.cmp(&other.source))
            .then(self.mode.cmp(&other.mode))
    }
}

/// Paths to the final target, grouped by the attractor they start from.
#[derive(Debug, Default)]
pub struct PathLedger {
    entries: BTreeMap<usize, Vec<ControlPath>>,
    seen: HashSet<(usize, Vec<usize>, Vec<Control>)>,
}

impl PathLedger {
    /// Stores a path; returns `false` if an identical one is already stored.
    pub fn insert(&mut self, path: ControlPath) -> bool {
        let key = (
            path.source,
            path.intermediates.clone(),
            path.controls.clone(),
        );
        if !self.seen.insert(key) {
            return false;
        }
        self.entries.entry(path.source).or_default().push(path);
        true
    }

    pub fn paths_from(&self, attractor: usize) -> &[ControlPath] {
        self.entries.get(&attractor).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ControlPath> {
        self.entries.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

/// Checks whether a permanent control `c` that led into attractor `reached`
/// may stay in force along the remaining hops `delta` / `rho`.
///
/// At each hop the nodes re-perturbed by the next control are released; the
/// nodes still held must take the same values in consecutive attractors.
pub fn perm_control_validation(
    attractors: &[Attractor],
    c: &Control,
    reached: usize,
    delta: &[usize],
    rho: &[Control],
) -> bool {
    let (Some(&next), Some(next_control)) = (delta.first(), rho.first()) else {
        return true;
    };
    let residual = c.minus(next_control);
    let held = residual.nodes();
    if attractors[reached].projection(&held) != attractors[next].projection(&held) {
        return false;
    }
    perm_control_validation(attractors, &residual, next, &delta[1..], &rho[1..])
}

/// All paths with at most `q.budget` perturbations, sorted.
pub fn sequential_paths(analysis: &Analysis, q: &SequentialQuery) -> Result<Vec<ControlPath>> {
    let ledger = build_ledger(analysis, q)?;
    let mut out: Vec<ControlPath> = ledger
        .paths_from(q.source)
        .iter()
        .filter(|p| q.include_one_step || p.is_sequential())
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}

/// Sequential temporary control.
pub fn comp_seq_temp(analysis: &Analysis, q: &SequentialQuery) -> Result<Vec<ControlPath>> {
    debug_assert_eq!(q.mode, SequentialMode::Temporary);
    sequential_paths(analysis, q)
}

/// Sequential permanent control.
pub fn comp_seq_perm(analysis: &Analysis, q: &SequentialQuery) -> Result<Vec<ControlPath>> {
    debug_assert_eq!(q.mode, SequentialMode::Permanent);
    sequential_paths(analysis, q)
}

/// Sequential instantaneous control.
pub fn comp_seq_inst(analysis: &Analysis, q: &SequentialQuery) -> Result<Vec<ControlPath>> {
    debug_assert_eq!(q.mode, SequentialMode::Instantaneous);
    sequential_paths(analysis, q)
}

/// Runs both phases of the backward search and returns the full ledger.
pub fn build_ledger(analysis: &Analysis, q: &SequentialQuery) -> Result<PathLedger> {
    analysis.attractor(q.source)?;
    analysis.attractor(q.target)?;
    if q.source == q.target {
        return Err(Error::SameSourceTarget);
    }
    let mut ledger = PathLedger::default();
    if q.budget == 0 {
        return Ok(ledger);
    }
    let k = q.budget;
    let count = analysis.attractors().len();
    let cap = |a: usize| if a == q.source { k } else { k - 1 };
    let admissible = |a: usize| a != q.target && (a == q.source || q.may_pass(a));
    let mut steps = StepCache::new(analysis, q);

    let mut frontier: Vec<usize> = Vec::new();
    for a in (0..count).filter(|&a| admissible(a)) {
        for c in steps.controls(a, q.target, cap(a))? {
            let path = ControlPath {
                mode: q.mode,
                source: a,
                intermediates: vec![q.target],
                total: c.size(),
                controls: vec![c],
            };
            if ledger.insert(path) && a != q.source && !frontier.contains(&a) {
                frontier.push(a);
            }
        }
    }

    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for &hop_target in &frontier {
            for from in (0..count).filter(|&a| a != hop_target && admissible(a)) {
                let budget = cap(from);
                let controls = steps.controls(from, hop_target, budget)?;
                if controls.is_empty() {
                    continue;
                }
                let suffixes = ledger.paths_from(hop_target).to_vec();
                for suffix in suffixes.iter().filter(|p| !p.intermediates.contains(&from)) {
                    for c in &controls {
                        let total = c.size() + suffix.total;
                        if total > budget {
                            continue;
                        }
                        if q.mode == SequentialMode::Permanent
                            && !perm_control_validation(
                                analysis.attractors(),
                                c,
                                hop_target,
                                &suffix.intermediates,
                                &suffix.controls,
                            )
                        {
                            continue;
                        }
                        let mut intermediates = Vec::with_capacity(suffix.intermediates.len() + 1);
                        intermediates.push(hop_target);
                        intermediates.extend_from_slice(&suffix.intermediates);
                        let mut chain = Vec::with_capacity(suffix.controls.len() + 1);
                        chain.push(c.clone());
                        chain.extend_from_slice(&suffix.controls);
                        let path = ControlPath {
                            mode: q.mode,
                            source: from,
                            intermediates,
                            controls: chain,
                            total,
                        };
                        if ledger.insert(path) && from != q.source && !next_frontier.contains(&from)
                        {
                            next_frontier.push(from);
                        }
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    Ok(ledger)
}

/// Minimal one-step controls per attractor pair, computed once at the full
/// budget and filtered per use.
struct StepCache<'a> {
    analysis: &'a Analysis,
    query: &'a SequentialQuery,
    cache: HashMap<(usize, usize), Vec<Control>>,
}

impl<'a> StepCache<'a> {
    fn new(analysis: &'a Analysis, query: &'a SequentialQuery) -> StepCache<'a> {
        StepCache {
            analysis,
            query,
            cache: HashMap::new(),
        }
    }

    fn controls(&mut self, from: usize, to: usize, budget: usize) -> Result<Vec<Control>> {
        if !self.cache.contains_key(&(from, to)) {
            let q = ControlQuery {
                source: from,
                target: to,
                mode: self.query.mode.step_mode(),
                budget: self.query.budget,
                forbidden: self.query.forbidden.clone(),
                policy: self.query.policy,
            };
            let found = self
                .analysis
                .minimal_controls(&q)?
                .into_iter()
                .map(|s| s.control)
                .collect();
            self.cache.insert((from, to), found);
        }
        Ok(self.cache[&(from, to)]
            .iter()
            .filter(|c| c.size() <= budget)
            .cloned()
            .collect())
    }
}

/// The paths with the fewest total perturbations.
pub fn shortest(paths: &[ControlPath]) -> Vec<ControlPath> {
    let Some(best) = paths.iter().map(|p| p.total).min() else {
        return Vec::new();
    };
    paths.iter().filter(|p| p.total == best).cloned().collect()
}

/// Budget used when none is given: the size of the smallest direct control
/// of the matching one-step mode, or the network size if there is none.
pub fn default_budget(analysis: &Analysis, q: &SequentialQuery) -> Result<usize> {
    let one = ControlQuery {
        source: q.source,
        target: q.target,
        mode: q.mode.step_mode(),
        budget: analysis.network().len(),
        forbidden: q.forbidden.clone(),
        policy: q.policy,
    };
    Ok(analysis
        .minimal_control_size(&one)?
        .unwrap_or(analysis.network().len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{flips_for, parse_network, State};
    use crate::DEFAULT_MAX_NODES;

    fn example() -> Analysis {
        let g = parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap();
        Analysis::new(g, DEFAULT_MAX_NODES).unwrap()
    }

    fn flips(s: &str, nodes: &[usize]) -> Control {
        flips_for(State::parse(s).unwrap(), nodes.iter().map(|&i| NodeId(i)))
    }

    fn summary(paths: &[ControlPath]) -> Vec<(Vec<usize>, Vec<Vec<usize>>, usize)> {
        paths
            .iter()
            .map(|p| {
                (
                    p.intermediates.clone(),
                    p.controls
                        .iter()
                        .map(|c| c.nodes().into_iter().map(|n| n.0).collect())
                        .collect(),
                    p.total,
                )
            })
            .collect()
    }

    #[test]
    fn temporary_paths() {
        let a = example();
        let q = SequentialQuery::new(0, 2, SequentialMode::Temporary, 2);
        let paths = comp_seq_temp(&a, &q).unwrap();
        assert_eq!(
            summary(&paths),
            [
                (vec![1, 2], vec![vec![0], vec![2]], 2),
                (vec![1, 2], vec![vec![1], vec![2]], 2)
            ]
        );
        let q1 = SequentialQuery::new(0, 2, SequentialMode::Temporary, 1);
        assert!(comp_seq_temp(&a, &q1).unwrap().is_empty());
    }

    #[test]
    fn one_step_paths_are_optional() {
        let a = example();
        let q = SequentialQuery::new(1, 2, SequentialMode::Temporary, 1).include_one_step(true);
        assert_eq!(
            summary(&comp_seq_temp(&a, &q).unwrap()),
            [(vec![2], vec![vec![2]], 1)]
        );
        let q = SequentialQuery::new(1, 2, SequentialMode::Temporary, 1);
        assert!(comp_seq_temp(&a, &q).unwrap().is_empty());
    }

    #[test]
    fn permanent_paths() {
        let a = example();
        let q = SequentialQuery::new(0, 2, SequentialMode::Permanent, 2);
        let paths = comp_seq_perm(&a, &q).unwrap();
        assert_eq!(
            summary(&paths),
            [
                (vec![1, 2], vec![vec![0], vec![2]], 2),
                (vec![1, 2], vec![vec![1], vec![2]], 2)
            ]
        );
        let q = SequentialQuery::new(0, 1, SequentialMode::Permanent, 1).include_one_step(true);
        assert_eq!(
            summary(&comp_seq_perm(&a, &q).unwrap()),
            [(vec![1], vec![vec![0]], 1), (vec![1], vec![vec![1]], 1)]
        );
    }

    #[test]
    fn instantaneous_paths() {
        let a = example();
        let q = SequentialQuery::new(0, 2, SequentialMode::Instantaneous, 3);
        let paths = comp_seq_inst(&a, &q).unwrap();
        assert_eq!(
            summary(&paths),
            [(vec![1, 2], vec![vec![0, 1], vec![2]], 3)]
        );
        let q = SequentialQuery::new(0, 2, SequentialMode::Instantaneous, 2);
        assert!(comp_seq_inst(&a, &q).unwrap().is_empty());
    }

    #[test]
    fn excluded_intermediate() {
        let a = example();
        let q =
            SequentialQuery::new(0, 2, SequentialMode::Temporary, 2).exclude_intermediates([1], 3);
        assert!(comp_seq_temp(&a, &q).unwrap().is_empty());
    }

    #[test]
    fn validation_examples() {
        let a = example();
        let atts = a.attractors();
        // x1 held at 1 agrees between 110 and 111.
        assert!(perm_control_validation(
            atts,
            &flips("000", &[0]),
            1,
            &[2],
            &[flips("110", &[2])]
        ));
        // Holding x3 at 1 is released when the next control re-perturbs x3.
        assert!(perm_control_validation(
            atts,
            &flips("000", &[2]),
            1,
            &[0],
            &[flips("110", &[2])]
        ));
        // Holding x1 at 1 contradicts A1 = {000}.
        assert!(!perm_control_validation(
            atts,
            &flips("000", &[0]),
            1,
            &[0],
            &[flips("110", &[2])]
        ));
        // An empty residual passes whatever follows.
        assert!(perm_control_validation(
            atts,
            &Control::empty(),
            1,
            &[2, 0],
            &[flips("110", &[2]), flips("111", &[0])]
        ));
        assert!(perm_control_validation(
            atts,
            &flips("000", &[0]),
            1,
            &[],
            &[]
        ));
    }

    #[test]
    fn shortest_selection() {
        let mk = |total| ControlPath {
            mode: SequentialMode::Temporary,
            source: 0,
            intermediates: vec![1, 2],
            controls: vec![],
            total,
        };
        assert!(shortest(&[]).is_empty());
        assert_eq!(shortest(&[mk(4)]), [mk(4)]);
        assert_eq!(shortest(&[mk(3), mk(2), mk(3)]), [mk(2)]);
    }

    #[test]
    fn default_budgets() {
        let a = example();
        let budget = |m| default_budget(&a, &SequentialQuery::new(0, 2, m, 0)).unwrap();
        assert_eq!(budget(SequentialMode::Instantaneous), 3);
        assert_eq!(budget(SequentialMode::Temporary), 2);
        assert_eq!(budget(SequentialMode::Permanent), 2);
    }
}
