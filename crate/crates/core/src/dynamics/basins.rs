use super::{Attractor, BasinReport, TransitionSystem};

impl TransitionSystem {
    /// Weak and strong basins of every attractor, in attractor order.
    pub fn basins(&self, attractors: &[Attractor]) -> Vec<BasinReport> {
        attractors
            .iter()
            .map(|a| BasinReport {
                attractor: a.id,
                weak: self.weak_basin(a.states()),
                strong: self.strong_basin(a),
            })
            .collect()
    }
}
