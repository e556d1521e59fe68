use std::fmt;

use crate::model::State;

/// Dense subset of the `2^n` states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    width: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(width: usize) -> StateSet {
        let bits = 1usize << width;
        StateSet {
            width,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> StateSet {
        let mut s = StateSet::empty(width);
        for b in 0..1u32 << width {
            s.insert_bits(b);
        }
        s
    }

    pub fn from_states(width: usize, states: impl IntoIterator<Item = State>) -> StateSet {
        let mut s = StateSet::empty(width);
        for st in states {
            s.insert(st);
        }
        s
    }

    /// Builds a set from bit-strings; panics on malformed input.
    pub fn from_bitstrings<'a>(
        width: usize,
        states: impl IntoIterator<Item = &'a str>,
    ) -> StateSet {
        StateSet::from_states(
            width,
            states.into_iter().map(|t| {
                let s = State::parse(t).unwrap_or_else(|| panic!("bad state `{t}`"));
                assert_eq!(s.width(), width);
                s
            }),
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.words[(bits >> 6) as usize] >> (bits & 63) & 1 == 1
    }

    pub(crate) fn insert_bits(&mut self, bits: u32) -> bool {
        let w = &mut self.words[(bits >> 6) as usize];
        let m = 1u64 << (bits & 63);
        let fresh = *w & m == 0;
        *w |= m;
        fresh
    }

    pub(crate) fn remove_bits(&mut self, bits: u32) -> bool {
        let w = &mut self.words[(bits >> 6) as usize];
        let m = 1u64 << (bits & 63);
        let present = *w & m != 0;
        *w &= !m;
        present
    }

    pub fn contains(&self, s: State) -> bool {
        debug_assert_eq!(s.width(), self.width);
        self.contains_bits(s.bits())
    }

    pub fn insert(&mut self, s: State) -> bool {
        debug_assert_eq!(s.width(), self.width);
        self.insert_bits(s.bits())
    }

    pub fn remove(&mut self, s: State) -> bool {
        self.remove_bits(s.bits())
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn iter_bits(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32) << 6 | t)
            })
        })
    }

    /// Members in ascending integer order.
    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        let width = self.width;
        self.iter_bits().map(move |b| State::new(b, width))
    }

    pub fn first(&self) -> Option<State> {
        self.iter().next()
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.iter().map(|s| s.to_string()).collect()
    }

    fn zip_with(&self, other: &StateSet, op: impl Fn(u64, u64) -> u64) -> StateSet {
        assert_eq!(self.width, other.width, "state sets of different width");
        StateSet {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|s| s.to_string()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_membership() {
        let mut s = StateSet::empty(3);
        assert!(s.is_empty());
        assert!(s.insert(State::parse("101").unwrap()));
        assert!(!s.insert(State::parse("101").unwrap()));
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_bitstrings(), ["101"]);
        assert_eq!(StateSet::full(3).len(), 8);
        assert_eq!(StateSet::full(0).len(), 1);
    }

    proptest! {
        #[test]
        fn set_algebra(a in proptest::collection::vec(0u32..128, 0..40),
                       b in proptest::collection::vec(0u32..128, 0..40)) {
            let sa = StateSet::from_states(7, a.iter().map(|&x| State::new(x, 7)));
            let sb = StateSet::from_states(7, b.iter().map(|&x| State::new(x, 7)));
            let u = sa.union(&sb);
            let i = sa.intersection(&sb);
            prop_assert_eq!(u.len() + i.len(), sa.len() + sb.len());
            prop_assert!(i.is_subset(&sa) && sa.is_subset(&u));
            prop_assert!(sa.difference(&sb).is_disjoint(&sb));
            prop_assert_eq!(sa.difference(&sb).union(&i), sa.clone());
            let listed: Vec<u32> = sa.iter().map(|s| s.bits()).collect();
            let mut expected = a.clone();
            expected.sort();
            expected.dedup();
            prop_assert_eq!(listed, expected);
        }
    }
}
