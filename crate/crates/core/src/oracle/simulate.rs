use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BooleanNetwork, NodeId, State};

/// Random asynchronous run from `s0`.
///
/// At every step one node whose update would change its value is picked
/// uniformly and updated. The run stops after `max_steps` updates or at a
/// fixed point. The returned trajectory starts with `s0`.
pub fn simulate(g: &BooleanNetwork, s0: State, max_steps: usize, seed: u64) -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trajectory = vec![s0];
    let mut s = s0;
    for _ in 0..max_steps {
        let image = g.image(s);
        let movable: Vec<NodeId> = g.nodes().filter(|&i| image.get(i) != s.get(i)).collect();
        if movable.is_empty() {
            break;
        }
        s = s.flip(movable[rng.gen_range(0..movable.len())]);
        trajectory.push(s);
    }
    trajectory
}
