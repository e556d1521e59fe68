use std::fmt;

use super::NodeId;

/// Hard upper limit on the width of a [`State`].
pub const MAX_WIDTH: usize = 32;

/// A point of `{0,1}^n`.
///
/// Node `i` is stored at bit `n - 1 - i`, so the integer encoding of a state
/// reads the same as its bit-string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: u32,
    width: u8,
}

impl State {
    pub fn new(bits: u32, width: usize) -> State {
        assert!(
            width <= MAX_WIDTH,
            "state width {width} exceeds {MAX_WIDTH}"
        );
        let mask = if width == 32 {
            u32::MAX
        } else {
            (1u32 << width) - 1
        };
        assert!(
            bits & !mask == 0,
            "bits {bits:#b} do not fit in width {width}"
        );
        State {
            bits,
            width: width as u8,
        }
    }

    pub fn zeros(width: usize) -> State {
        State::new(0, width)
    }

    pub fn parse(text: &str) -> Option<State> {
        if text.is_empty() || text.len() > MAX_WIDTH {
            return None;
        }
        let mut bits = 0u32;
        for c in text.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(State::new(bits, text.len()))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Bit mask selecting `node` inside a state of `width` nodes.
    pub fn node_mask(width: usize, node: NodeId) -> u32 {
        debug_assert!(node.0 < width);
        1u32 << (width - 1 - node.0)
    }

    pub fn get(self, node: NodeId) -> bool {
        self.bits & State::node_mask(self.width(), node) != 0
    }

    pub fn with(self, node: NodeId, value: bool) -> State {
        let m = State::node_mask(self.width(), node);
        let bits = if value { self.bits | m } else { self.bits & !m };
        State { bits, ..self }
    }

    pub fn flip(self, node: NodeId) -> State {
        State {
            bits: self.bits ^ State::node_mask(self.width(), node),
            ..self
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width()).rev() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Number of nodes on which two states differ.
pub fn hamming(s: State, t: State) -> usize {
    assert_eq!(
        s.width, t.width,
        "hamming distance of states of different width"
    );
    (s.bits ^ t.bits).count_ones() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> State {
        State::parse(s).unwrap()
    }

    #[test]
    fn msb_first_encoding() {
        let s = st("110");
        assert_eq!(s.bits(), 6);
        assert!(s.get(NodeId(0)));
        assert!(s.get(NodeId(1)));
        assert!(!s.get(NodeId(2)));
        assert_eq!(s.to_string(), "110");
        assert_eq!(st("000").flip(NodeId(0)), st("100"));
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(st("000"), st("110")), 2);
        assert_eq!(hamming(st("101"), st("101")), 0);
        assert_eq!(hamming(st("101"), st("010")), 3);
    }

    #[test]
    fn hamming_is_a_metric() {
        for n in 1..=6usize {
            let all: Vec<State> = (0..1u32 << n).map(|b| State::new(b, n)).collect();
            for &a in &all {
                assert_eq!(hamming(a, a), 0);
                for &b in &all {
                    assert_eq!(hamming(a, b), hamming(b, a));
                    if a != b {
                        assert!(hamming(a, b) > 0);
                    }
                    for &c in &all {
                        assert!(hamming(a, c) <= hamming(a, b) + hamming(b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(State::parse("").is_none());
        assert!(State::parse("012").is_none());
    }
}
