use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{Attractor, StateSet};
use crate::model::{BooleanNetwork, Control, ControlledNetwork, State};
use crate::{Error, Result};

/// Default bound on the number of nodes of an explicitly explored network.
pub const DEFAULT_MAX_NODES: usize = 25;

/// Bound that `max_nodes` overrides cannot lift.
pub const HARD_MAX_NODES: usize = 30;

/// Explicit asynchronous transition system of a network, possibly under a
/// control.
///
/// The image `F(s)` of every state is tabulated once; restricting to a
/// control shares the table and masks out the controlled nodes, which is the
/// same as replacing their update functions by constants.
#[derive(Clone)]
pub struct TransitionSystem {
    width: usize,
    image: Arc<[u32]>,
    fixed_mask: u32,
    fixed_values: u32,
}

impl TransitionSystem {
    pub fn new(g: &BooleanNetwork, max_nodes: usize) -> Result<TransitionSystem> {
        check_size(g.len(), max_nodes)?;
        let n = g.len();
        let image = (0..1u32 << n)
            .map(|b| g.image(State::new(b, n)).bits())
            .collect();
        Ok(TransitionSystem {
            width: n,
            image,
            fixed_mask: 0,
            fixed_values: 0,
        })
    }

    /// Builds the system directly from the constant-substituted functions.
    pub fn from_controlled(
        g: &ControlledNetwork<'_>,
        max_nodes: usize,
    ) -> Result<TransitionSystem> {
        check_size(g.len(), max_nodes)?;
        let n = g.len();
        let image = (0..1u32 << n)
            .map(|b| g.image(State::new(b, n)).bits())
            .collect();
        Ok(TransitionSystem {
            width: n,
            image,
            fixed_mask: g.control().fixed_mask(n),
            fixed_values: g.control().fixed_values(n),
        })
    }

    /// The system of the same network under `c`.
    ///
    /// Any control already applied to `self` is replaced, not combined.
    pub fn under_control(&self, c: &Control) -> Result<TransitionSystem> {
        c.check_range(self.width)?;
        Ok(TransitionSystem {
            width: self.width,
            image: Arc::clone(&self.image),
            fixed_mask: c.fixed_mask(self.width),
            fixed_values: c.fixed_values(self.width),
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_controlled(&self) -> bool {
        self.fixed_mask != 0
    }

    fn free_mask(&self) -> u32 {
        self.full_mask() & !self.fixed_mask
    }

    fn full_mask(&self) -> u32 {
        if self.width == 32 {
            u32::MAX
        } else {
            (1u32 << self.width) - 1
        }
    }

    pub(crate) fn admits_bits(&self, bits: u32) -> bool {
        bits & self.fixed_mask == self.fixed_values
    }

    /// Whether `s` belongs to the (restricted) state space.
    pub fn admits(&self, s: State) -> bool {
        s.width() == self.width && self.admits_bits(s.bits())
    }

    /// Nodes whose update would change their value at `bits`.
    #[inline]
    pub(crate) fn unstable(&self, bits: u32) -> u32 {
        (self.image[bits as usize] ^ bits) & !self.fixed_mask
    }

    /// States of the state space in ascending order.
    pub(crate) fn domain(&self) -> impl Iterator<Item = u32> {
        let free = self.free_mask();
        let values = self.fixed_values;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let sub = next?;
            next = if sub == free {
                None
            } else {
                Some(sub.wrapping_sub(free) & free)
            };
            Some(sub | values)
        })
    }

    pub fn domain_size(&self) -> usize {
        1usize << self.free_mask().count_ones()
    }

    pub fn states(&self) -> StateSet {
        let mut s = StateSet::empty(self.width);
        for b in self.domain() {
            s.insert_bits(b);
        }
        s
    }

    /// Possible next states of `s`, ascending. Includes `s` itself when some
    /// node is stable.
    pub fn successors(&self, s: State) -> Vec<State> {
        assert!(self.admits(s), "state {s} is outside the state space");
        let bits = s.bits();
        let moves = self.unstable(bits);
        let mut out: Vec<State> = bit_iter(moves)
            .map(|m| State::new(bits ^ m, self.width))
            .collect();
        if (moves.count_ones() as usize) < self.width {
            out.push(s);
        }
        out.sort();
        out
    }

    /// Value-changing successors of a state given as raw bits.
    pub(crate) fn post(&self, bits: u32) -> impl Iterator<Item = u32> {
        bit_iter(self.unstable(bits)).map(move |m| bits ^ m)
    }

    /// Value-changing predecessors of a state given as raw bits.
    pub(crate) fn pre(&self, bits: u32) -> impl Iterator<Item = u32> + '_ {
        bit_iter(self.free_mask())
            .map(move |m| (bits ^ m, m))
            .filter(move |&(p, m)| self.unstable(p) & m != 0)
            .map(|(p, _)| p)
    }

    /// All states reachable from `s`, including `s`.
    pub fn reach(&self, s: State) -> StateSet {
        assert!(self.admits(s), "state {s} is outside the state space");
        let mut seen = StateSet::empty(self.width);
        let mut queue = VecDeque::new();
        seen.insert_bits(s.bits());
        queue.push_back(s.bits());
        while let Some(v) = queue.pop_front() {
            for w in self.post(v) {
                if seen.insert_bits(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// All states with a path into `target`.
    pub fn weak_basin(&self, target: &StateSet) -> StateSet {
        let mut seen = StateSet::empty(self.width);
        let mut queue = VecDeque::new();
        for b in target.iter_bits().filter(|&b| self.admits_bits(b)) {
            seen.insert_bits(b);
            queue.push_back(b);
        }
        while let Some(v) = queue.pop_front() {
            for p in self.pre(v) {
                if seen.insert_bits(p) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Strong basin of an attractor of this system.
    pub fn strong_basin(&self, a: &Attractor) -> StateSet {
        self.strong_basin_of(a.states())
            .expect("attractors are non-empty")
    }

    /// Largest set of states that have a path into `target` and from which no
    /// path leaves that set before entering `target`.
    ///
    /// Obtained by peeling the weak basin: a non-target state is dropped as
    /// soon as one of its successors lies outside the remaining set. When
    /// `target` is an attractor this is its strong basin.
    pub fn strong_basin_of(&self, target: &StateSet) -> Result<StateSet> {
        let weak = self.weak_basin(target);
        let is_target = |b: u32| target.contains_bits(b);
        if !weak.iter_bits().any(is_target) {
            return Err(Error::EmptyTarget);
        }
        let mut basin = weak.clone();
        let mut queue = Vec::new();
        for s in weak.iter_bits().filter(|&s| !is_target(s)) {
            if self.post(s).any(|t| !weak.contains_bits(t)) {
                basin.remove_bits(s);
                queue.push(s);
            }
        }
        while let Some(r) = queue.pop() {
            for p in self.pre(r) {
                if !is_target(p) && basin.remove_bits(p) {
                    queue.push(p);
                }
            }
        }
        Ok(basin)
    }

    /// Strong basin of `target` computed in the system of the same network
    /// under `c`. Target states outside the restricted space are ignored.
    pub fn strong_basin_restricted(&self, c: &Control, target: &StateSet) -> Result<StateSet> {
        self.under_control(c)?.strong_basin_of(target)
    }

    /// Whether `start` lies in [`strong_basin_of`](Self::strong_basin_of) of
    /// the set described by `target`.
    ///
    /// Only the part of the state space reachable from `start` is explored.
    pub fn commits_to(&self, start: State, target: impl Fn(u32) -> bool) -> bool {
        let start = start.bits();
        if target(start) {
            return true;
        }
        let mut index: HashMap<u32, usize> = HashMap::new();
        let mut cone = vec![start];
        index.insert(start, 0);
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new()];
        let mut good = vec![false];
        let mut queue = Vec::new();
        let mut i = 0;
        while i < cone.len() {
            let v = cone[i];
            for w in self.post(v) {
                if target(w) {
                    if !good[i] {
                        good[i] = true;
                        queue.push(i);
                    }
                    continue;
                }
                let j = *index.entry(w).or_insert_with(|| {
                    cone.push(w);
                    reverse.push(Vec::new());
                    good.push(false);
                    cone.len() - 1
                });
                reverse[j].push(i);
            }
            i += 1;
        }
        while let Some(j) = queue.pop() {
            for &p in &reverse[j] {
                if !good[p] {
                    good[p] = true;
                    queue.push(p);
                }
            }
        }
        good.iter().all(|&g| g)
    }

    /// Bottom strongly connected components, ordered by their smallest state.
    pub fn attractors(&self) -> Vec<Attractor> {
        let mut components = super::scc::bottom_components(self);
        components.sort_by_key(|c| c[0]);
        components
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                Attractor::new(
                    id,
                    members
                        .into_iter()
                        .map(|b| State::new(b, self.width))
                        .collect(),
                )
            })
            .collect()
    }
}

fn check_size(nodes: usize, max_nodes: usize) -> Result<()> {
    let max = max_nodes.min(HARD_MAX_NODES);
    if nodes > max {
        return Err(Error::TooManyNodes { nodes, max });
    }
    Ok(())
}

pub(crate) fn bit_iter(mut mask: u32) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let low = mask & mask.wrapping_neg();
        mask &= mask - 1;
        Some(low)
    })
}
