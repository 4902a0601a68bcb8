//! Seeded random draws shared by the benchmark and the checks.
//!
//! Trial `i` of a run seeded with `seed` draws from its own ChaCha stream
//! seeded with `seed + i`, so trials are reproducible individually and in any
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::objectives::Interval;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

/// Uniform point in the closed interval inset by `1e-9 * width` from the ends.
pub fn uniform_in<R: Rng>(domain: Interval, rng: &mut R) -> f64 {
    let mu = domain.inset();
    rng.gen_range(domain.lo + mu..=domain.hi - mu)
}

/// Initial point for trial `trial`.
pub fn initial_point(domain: Interval, seed: u64, trial: u64) -> f64 {
    uniform_in(domain, &mut trial_rng(seed, trial))
}

/// Random sign times `10^u` with `u` uniform on `[-6, 6]`.
pub fn heavy_tailed<R: Rng>(rng: &mut R) -> f64 {
    let magnitude = 10f64.powf(rng.gen_range(-6.0..=6.0));
    if rng.gen_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}
