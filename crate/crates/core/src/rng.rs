//! Seeded pseudorandom source shared by every stochastic component.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Both the stream cipher and the seed
//! expansion are fixed algorithms, so a given seed yields the same stream on
//! every platform. Bounded integers are drawn by rejection from `next_u64`
//! and unit floats from the top 53 bits, so nothing depends on the
//! distribution internals of `rand`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `0..bound`. `bound` must be nonzero.
pub fn below(rng: &mut Rng, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    // 2^64 mod bound; accepting only x >= this leaves a multiple of `bound` values
    let reject_below = bound.wrapping_neg() % bound;
    loop {
        let x = rng.next_u64();
        if x >= reject_below {
            return x % bound;
        }
    }
}

/// Uniform float in `[0, 1)` with 53 bits of resolution.
pub fn unit_f64(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
