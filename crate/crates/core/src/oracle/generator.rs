use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BooleanExpr, BooleanNetwork};

/// Random network with `n` nodes named `v1..vn`.
///
/// Each node gets between one and three distinct regulators, each used once
/// as a possibly negated literal, combined by a random tree of binary ANDs
/// and ORs. The same seed always gives the same network.
pub fn random_network(n: usize, seed: u64) -> BooleanNetwork {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    let functions = (0..n)
        .map(|_| {
            let degree = rng.gen_range(1..=3usize.min(n));
            let mut items: Vec<BooleanExpr> = sample(&mut rng, n, degree)
                .into_iter()
                .map(|r| {
                    let lit = BooleanExpr::var(r);
                    if rng.gen_bool(0.5) {
                        BooleanExpr::negate(lit)
                    } else {
                        lit
                    }
                })
                .collect();
            while items.len() > 1 {
                let a = items.swap_remove(rng.gen_range(0..items.len()));
                let b = items.swap_remove(rng.gen_range(0..items.len()));
                items.push(if rng.gen_bool(0.5) {
                    BooleanExpr::And(vec![a, b])
                } else {
                    BooleanExpr::Or(vec![a, b])
                });
            }
            items.pop().expect("at least one regulator")
        })
        .collect();
    BooleanNetwork::new(names, functions).expect("generated networks are well formed")
}
