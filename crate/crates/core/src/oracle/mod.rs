//! Brute-force reference implementation.
//!
//! Everything here is recomputed from the definitions, using only the model
//! types: reachability by one forward search per state, attractors as
//! reach-closed sets that every member can re-enter, basins by intersecting
//! reach sets with attractors. It is slow and only meant for small networks
//! (at most [`ORACLE_MAX_NODES`] nodes) in tests and path verification.

mod generator;
mod simulate;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::model::{restrict, BooleanNetwork, Control, NodeId, State};
use crate::{Error, Result};

pub use generator::random_network;
pub use simulate::simulate;

pub const ORACLE_MAX_NODES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Instantaneous,
    Temporary,
    Permanent,
}

/// Controls to apply one after another, and the attractor each one is
/// expected to lead to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub steps: Vec<(Control, StepKind)>,
    pub intermediates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub failing_step: Option<usize>,
    pub witness: Option<State>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict {
            ok: true,
            failing_step: None,
            witness: None,
        }
    }

    fn fail(step: usize, witness: Option<State>) -> Verdict {
        Verdict {
            ok: false,
            failing_step: Some(step),
            witness,
        }
    }
}

/// Explicit graph over the states admitted by a control, without self-loops.
struct Graph {
    n: usize,
    admitted: Vec<bool>,
    succ: Vec<Vec<u32>>,
}

impl Graph {
    fn build(g: &BooleanNetwork, c: &Control) -> Graph {
        let n = g.len();
        let controlled = restrict(g, c).expect("control checked against the network");
        let size = 1usize << n;
        let mut admitted = vec![false; size];
        let mut succ = vec![Vec::new(); size];
        for b in 0..size as u32 {
            let s = State::new(b, n);
            if !controlled.contains(s) {
                continue;
            }
            admitted[b as usize] = true;
            let image = controlled.image(s);
            for i in 0..n {
                let node = NodeId(i);
                if image.get(node) != s.get(node) {
                    succ[b as usize].push(s.flip(node).bits());
                }
            }
        }
        Graph { n, admitted, succ }
    }

    fn reach(&self, from: u32, absorbing: &dyn Fn(u32) -> bool) -> Vec<bool> {
        let mut seen = vec![false; 1 << self.n];
        let mut queue = VecDeque::from([from]);
        seen[from as usize] = true;
        while let Some(v) = queue.pop_front() {
            if absorbing(v) {
                continue;
            }
            for &w in &self.succ[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Checks that every run from `start` ends up in a bottom component made
    /// of `target` states, with `target` states optionally made absorbing.
    fn commits(&self, start: u32, target: &dyn Fn(u32) -> bool, absorbing: bool) -> bool {
        let stop = |b: u32| absorbing && target(b);
        let from_start = self.reach(start, &stop);
        let cone: Vec<u32> = (0..from_start.len() as u32)
            .filter(|&b| from_start[b as usize])
            .collect();
        let reach: HashMap<u32, Vec<bool>> =
            cone.iter().map(|&b| (b, self.reach(b, &stop))).collect();
        cone.iter().all(|&r| {
            let from_r = &reach[&r];
            let in_bottom = cone
                .iter()
                .filter(|&&t| from_r[t as usize])
                .all(|t| reach[t][r as usize]);
            !in_bottom || target(r)
        })
    }
}

type HopKey = (
    usize,
    usize,
    StepKind,
    BTreeSet<NodeId>,
    Option<usize>,
    bool,
);

pub struct Oracle<'a> {
    network: &'a BooleanNetwork,
    hops: RefCell<HashMap<HopKey, Vec<BTreeSet<NodeId>>>>,
    n: usize,
    reach: Vec<Vec<bool>>,
    attractors: Vec<Vec<State>>,
    attractor_of: Vec<Option<usize>>,
}

impl<'a> Oracle<'a> {
    pub fn new(network: &'a BooleanNetwork) -> Result<Oracle<'a>> {
        let n = network.len();
        if n > ORACLE_MAX_NODES {
            return Err(Error::TooManyNodes {
                nodes: n,
                max: ORACLE_MAX_NODES,
            });
        }
        let graph = Graph::build(network, &Control::empty());
        let reach: Vec<Vec<bool>> = (0..1u32 << n).map(|b| graph.reach(b, &|_| false)).collect();
        let size = 1usize << n;
        let mut attractors: Vec<Vec<State>> = Vec::new();
        let mut attractor_of = vec![None; size];
        for s in 0..size {
            if attractor_of[s].is_some() {
                continue;
            }
            // s lies on an attractor iff it can come back from everywhere it reaches.
            if (0..size).all(|t| !reach[s][t] || reach[t][s]) {
                let members: Vec<State> = (0..size)
                    .filter(|&t| reach[s][t])
                    .map(|t| State::new(t as u32, n))
                    .collect();
                for m in &members {
                    attractor_of[m.bits() as usize] = Some(attractors.len());
                }
                attractors.push(members);
            }
        }
        Ok(Oracle {
            network,
            hops: RefCell::new(HashMap::new()),
            n,
            reach,
            attractors,
            attractor_of,
        })
    }

    pub fn network(&self) -> &BooleanNetwork {
        self.network
    }

    /// Attractors ordered by their smallest state; members ascending.
    pub fn attractors(&self) -> &[Vec<State>] {
        &self.attractors
    }

    fn state(&self, bits: usize) -> State {
        State::new(bits as u32, self.n)
    }

    pub fn reach(&self, s: State) -> Vec<State> {
        let row = &self.reach[s.bits() as usize];
        (0..row.len())
            .filter(|&t| row[t])
            .map(|t| self.state(t))
            .collect()
    }

    fn reached_attractors(&self, s: u32) -> BTreeSet<usize> {
        let row = &self.reach[s as usize];
        (0..row.len())
            .filter(|&t| row[t])
            .filter_map(|t| self.attractor_of[t])
            .collect()
    }

    pub fn weak_basin(&self, a: usize) -> Vec<State> {
        (0..1usize << self.n)
            .filter(|&s| self.reached_attractors(s as u32).contains(&a))
            .map(|s| self.state(s))
            .collect()
    }

    fn in_strong_basin(&self, a: usize, s: u32) -> bool {
        self.reached_attractors(s).into_iter().eq([a])
    }

    pub fn strong_basin(&self, a: usize) -> Vec<State> {
        (0..1usize << self.n)
            .filter(|&s| self.in_strong_basin(a, s as u32))
            .map(|s| self.state(s))
            .collect()
    }

    /// Checks one controlled hop from `from` into attractor `to`.
    ///
    /// On failure returns the state the control produced.
    pub fn check_step(
        &self,
        kind: StepKind,
        c: &Control,
        from: State,
        to: usize,
    ) -> Result<(), State> {
        let flipped = c.force(from);
        let ok = match kind {
            StepKind::Instantaneous => self.in_strong_basin(to, flipped.bits()),
            StepKind::Temporary => {
                let graph = Graph::build(self.network, c);
                let target = |b: u32| graph.admitted[b as usize] && self.in_strong_basin(to, b);
                let any = (0..1u32 << self.n).any(target);
                any && graph.commits(flipped.bits(), &target, true)
            }
            StepKind::Permanent => {
                let members = &self.attractors[to];
                if members.iter().all(|&m| c.admits(m)) {
                    let graph = Graph::build(self.network, c);
                    let target = |b: u32| self.attractor_of[b as usize] == Some(to);
                    graph.commits(flipped.bits(), &target, false)
                } else {
                    false
                }
            }
        };
        if ok {
            Ok(())
        } else {
            Err(flipped)
        }
    }

    /// Every subset-minimal node set (up to `max_size` nodes, avoiding
    /// `forbidden`) whose flip in the source works. With `all_states` the
    /// control must work from every member of the source.
    pub fn brute_force_minimal_controls(
        &self,
        source: usize,
        target: usize,
        kind: StepKind,
        forbidden: &BTreeSet<NodeId>,
        max_size: Option<usize>,
        all_states: bool,
    ) -> Vec<BTreeSet<NodeId>> {
        if source == target {
            return vec![BTreeSet::new()];
        }
        let key = (
            source,
            target,
            kind,
            forbidden.clone(),
            max_size,
            all_states,
        );
        if let Some(hit) = self.hops.borrow().get(&key) {
            return hit.clone();
        }
        let found = self.search_controls(source, target, kind, forbidden, max_size, all_states);
        self.hops.borrow_mut().insert(key, found.clone());
        found
    }

    fn search_controls(
        &self,
        source: usize,
        target: usize,
        kind: StepKind,
        forbidden: &BTreeSet<NodeId>,
        max_size: Option<usize>,
        all_states: bool,
    ) -> Vec<BTreeSet<NodeId>> {
        let n = self.n;
        let members = &self.attractors[source];
        let designated = members[0];
        let mut masks: Vec<u32> = (0..1u32 << n).collect();
        masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
        let to_nodes = |m: u32| -> BTreeSet<NodeId> {
            (0..n)
                .filter(|&i| m >> (n - 1 - i) & 1 == 1)
                .map(NodeId)
                .collect()
        };
        let mut valid: Vec<u32> = Vec::new();
        for m in masks {
            if max_size.is_some_and(|k| m.count_ones() as usize > k) {
                continue;
            }
            let nodes = to_nodes(m);
            if nodes.iter().any(|x| forbidden.contains(x)) || valid.iter().any(|&v| v & !m == 0) {
                continue;
            }
            let c = flip_control(designated, &nodes);
            let starts: &[State] = if all_states { members } else { &members[..1] };
            if starts
                .iter()
                .all(|&s| self.check_step(kind, &c, s, target).is_ok())
            {
                valid.push(m);
            }
        }
        let mut out: Vec<BTreeSet<NodeId>> = valid.into_iter().map(to_nodes).collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Distinct value patterns of an attractor on `nodes`.
    fn pattern(&self, a: usize, nodes: &BTreeSet<NodeId>) -> BTreeSet<Vec<bool>> {
        self.attractors[a]
            .iter()
            .map(|s| nodes.iter().map(|&x| s.get(x)).collect())
            .collect()
    }

    /// Checks that each permanent control keeps holding values consistent
    /// with every attractor visited after it, releasing nodes as later
    /// controls re-perturb them.
    pub fn permanent_chain_holds(&self, reached: &[usize], controls: &[Control]) -> Option<usize> {
        for i in 0..controls.len() {
            let mut held = controls[i].nodes();
            for j in i + 1..controls.len() {
                for x in controls[j].nodes() {
                    held.remove(&x);
                }
                if self.pattern(reached[i], &held) != self.pattern(reached[j], &held) {
                    return Some(i);
                }
            }
        }
        None
    }

    /// Replays a schedule from `source` and checks it ends in `target`.
    ///
    /// Each hop is checked from the designated (smallest) state of the
    /// attractor it starts from or, with `all_states`, from all of them.
    pub fn verify_path(
        &self,
        source: usize,
        target: usize,
        schedule: &Schedule,
        all_states: bool,
    ) -> Result<Verdict> {
        if schedule.steps.len() != schedule.intermediates.len() {
            return Err(Error::ScheduleLength {
                controls: schedule.steps.len(),
                intermediates: schedule.intermediates.len(),
            });
        }
        for &a in schedule.intermediates.iter().chain([&source, &target]) {
            if a >= self.attractors.len() {
                return Err(Error::UnknownAttractor(a));
            }
        }
        if schedule.steps.is_empty() {
            return Ok(if source == target {
                Verdict::pass()
            } else {
                Verdict::fail(0, None)
            });
        }
        let mut visited = vec![source];
        let mut current = source;
        for (i, ((c, kind), &next)) in schedule
            .steps
            .iter()
            .zip(&schedule.intermediates)
            .enumerate()
        {
            if visited.contains(&next) {
                return Ok(Verdict::fail(i, None));
            }
            let members = &self.attractors[current];
            let starts: &[State] = if all_states { members } else { &members[..1] };
            for &s in starts {
                if let Err(w) = self.check_step(*kind, c, s, next) {
                    return Ok(Verdict::fail(i, Some(w)));
                }
            }
            visited.push(next);
            current = next;
        }
        if current != target {
            return Ok(Verdict::fail(schedule.steps.len() - 1, None));
        }
        let permanent: Vec<Control> = schedule
            .steps
            .iter()
            .filter(|(_, k)| *k == StepKind::Permanent)
            .map(|(c, _)| c.clone())
            .collect();
        if permanent.len() == schedule.steps.len() {
            if let Some(i) = self.permanent_chain_holds(&schedule.intermediates, &permanent) {
                return Ok(Verdict::fail(i, None));
            }
        }
        Ok(Verdict::pass())
    }

    /// Every path from `source` to `target` through distinct attractors whose
    /// hops use minimal controls and whose total stays within `budget`.
    #[allow(clippy::too_many_arguments)]
    pub fn enumerate_paths(
        &self,
        source: usize,
        target: usize,
        kind: StepKind,
        budget: usize,
        forbidden: &BTreeSet<NodeId>,
        allowed_intermediates: Option<&BTreeSet<usize>>,
        include_one_step: bool,
        all_states: bool,
    ) -> Vec<(Vec<usize>, Vec<Control>)> {
        let mut hops: HashMap<(usize, usize), Vec<Control>> = HashMap::new();
        let mut out = Vec::new();
        let mut walk = Walk {
            oracle: self,
            kind,
            target,
            forbidden,
            allowed_intermediates,
            all_states,
            budget,
            hops: &mut hops,
            out: &mut out,
        };
        walk.extend(&mut vec![source], &mut Vec::new(), 0);
        out.retain(|(seq, ctl)| {
            (include_one_step || seq.len() >= 2)
                && (kind != StepKind::Permanent || self.permanent_chain_holds(seq, ctl).is_none())
        });
        out.sort();
        out
    }
}

struct Walk<'o, 'a> {
    oracle: &'o Oracle<'a>,
    kind: StepKind,
    target: usize,
    forbidden: &'o BTreeSet<NodeId>,
    allowed_intermediates: Option<&'o BTreeSet<usize>>,
    all_states: bool,
    budget: usize,
    hops: &'o mut HashMap<(usize, usize), Vec<Control>>,
    out: &'o mut Vec<(Vec<usize>, Vec<Control>)>,
}

impl Walk<'_, '_> {
    fn hop(&mut self, from: usize, to: usize) -> Vec<Control> {
        let (oracle, kind, forbidden, all_states, budget) = (
            self.oracle,
            self.kind,
            self.forbidden,
            self.all_states,
            self.budget,
        );
        self.hops
            .entry((from, to))
            .or_insert_with(|| {
                let designated = oracle.attractors[from][0];
                oracle
                    .brute_force_minimal_controls(
                        from,
                        to,
                        kind,
                        forbidden,
                        Some(budget),
                        all_states,
                    )
                    .iter()
                    .map(|nodes| flip_control(designated, nodes))
                    .collect()
            })
            .clone()
    }

    fn extend(&mut self, visited: &mut Vec<usize>, controls: &mut Vec<Control>, spent: usize) {
        let current = *visited.last().expect("walk starts at the source");
        for next in 0..self.oracle.attractors.len() {
            if visited.contains(&next) {
                continue;
            }
            if next != self.target && !self.allowed_intermediates.is_none_or(|s| s.contains(&next))
            {
                continue;
            }
            for c in self.hop(current, next) {
                let total = spent + c.size();
                if total > self.budget {
                    continue;
                }
                visited.push(next);
                controls.push(c);
                if next == self.target {
                    self.out.push((visited[1..].to_vec(), controls.clone()));
                } else {
                    self.extend(visited, controls, total);
                }
                visited.pop();
                controls.pop();
            }
        }
    }
}

fn flip_control(s: State, nodes: &BTreeSet<NodeId>) -> Control {
    let (ones, zeros): (Vec<NodeId>, Vec<NodeId>) = nodes.iter().partition(|&&x| !s.get(x));
    Control::new(zeros, ones).expect("a node is either on or off")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_network;

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    fn example() -> BooleanNetwork {
        parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap()
    }

    fn sets(v: &[BTreeSet<NodeId>]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.iter().map(|n| n.0).collect()).collect()
    }

    #[test]
    fn definitions_on_the_example() {
        let g = example();
        let o = Oracle::new(&g).unwrap();
        let atts: Vec<Vec<String>> = o
            .attractors()
            .iter()
            .map(|a| a.iter().map(|s| s.to_string()).collect())
            .collect();
        assert_eq!(atts, [["000"], ["110"], ["111"]]);
        let strs = |v: Vec<State>| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(strs(o.weak_basin(1)), ["010", "100", "101", "110"]);
        assert_eq!(strs(o.strong_basin(0)), ["000", "001"]);
        assert_eq!(strs(o.strong_basin(1)), ["110"]);
        assert_eq!(strs(o.strong_basin(2)), ["111"]);
    }

    #[test]
    fn minimal_controls_on_the_example() {
        let g = example();
        let o = Oracle::new(&g).unwrap();
        let none = BTreeSet::new();
        let ot = o.brute_force_minimal_controls(0, 1, StepKind::Temporary, &none, None, false);
        assert_eq!(sets(&ot), [[0], [1]]);
        let same = o.brute_force_minimal_controls(1, 1, StepKind::Temporary, &none, None, false);
        assert_eq!(same, [BTreeSet::new()]);
        let oi = o.brute_force_minimal_controls(0, 2, StepKind::Instantaneous, &none, None, false);
        assert_eq!(sets(&oi), [[0, 1, 2]]);
    }

    #[test]
    fn verify_example_paths() {
        let g = example();
        let o = Oracle::new(&g).unwrap();
        let c = |s: &str, nodes: &[usize]| {
            flip_control(st(s), &nodes.iter().map(|&i| NodeId(i)).collect())
        };
        let ast = Schedule {
            steps: vec![
                (c("000", &[0]), StepKind::Temporary),
                (c("110", &[2]), StepKind::Temporary),
            ],
            intermediates: vec![1, 2],
        };
        assert!(o.verify_path(0, 2, &ast, false).unwrap().ok);

        let bad = Schedule {
            steps: vec![
                (c("000", &[0]), StepKind::Instantaneous),
                (c("110", &[2]), StepKind::Instantaneous),
            ],
            intermediates: vec![1, 2],
        };
        assert_eq!(
            o.verify_path(0, 2, &bad, false).unwrap(),
            Verdict {
                ok: false,
                failing_step: Some(0),
                witness: Some(st("100"))
            }
        );

        let empty = Schedule {
            steps: vec![],
            intermediates: vec![],
        };
        assert!(o.verify_path(1, 1, &empty, false).unwrap().ok);

        let truncated = Schedule {
            steps: vec![(c("000", &[0]), StepKind::Temporary)],
            intermediates: vec![1, 2],
        };
        assert!(matches!(
            o.verify_path(0, 2, &truncated, false),
            Err(Error::ScheduleLength { .. })
        ));
    }

    #[test]
    fn enumerated_paths_on_the_example() {
        let g = example();
        let o = Oracle::new(&g).unwrap();
        let none = BTreeSet::new();
        let ast = o.enumerate_paths(0, 2, StepKind::Temporary, 2, &none, None, false, false);
        assert_eq!(ast.len(), 2);
        let asi = o.enumerate_paths(0, 2, StepKind::Instantaneous, 3, &none, None, false, false);
        assert_eq!(asi.len(), 1);
        let with_direct = o.enumerate_paths(0, 2, StepKind::Temporary, 2, &none, None, true, false);
        assert_eq!(with_direct.len(), 4);
    }

    #[test]
    fn size_bound() {
        let text: String = (0..13).map(|i| format!("v{i} = v{i}\n")).collect();
        let g = parse_network(&text).unwrap();
        assert!(matches!(Oracle::new(&g), Err(Error::TooManyNodes { .. })));
    }
}
