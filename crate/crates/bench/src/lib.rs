//! Shared inputs for the criterion benchmarks.

use specular_core::objectives::builtins;
use specular_core::sampling::{heavy_tailed, initial_point, trial_rng};
use specular_core::{Objective, OneSidedPair};

/// `n` seeded heavy-tailed one-sided pairs with a nonzero sum.
pub fn pairs(n: usize, seed: u64) -> Vec<OneSidedPair> {
    let mut rng = trial_rng(seed, 0);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = OneSidedPair {
            right: heavy_tailed(&mut rng),
            left: heavy_tailed(&mut rng),
        };
        if !p.is_zero_sum() {
            out.push(p);
        }
    }
    out
}

/// Every builtin with one seeded starting point inside its domain.
pub fn starts(seed: u64) -> Vec<(Objective, f64)> {
    builtins()
        .into_iter()
        .map(|f| {
            let x0 = initial_point(f.domain(), seed, 0);
            (f, x0)
        })
        .collect()
}
