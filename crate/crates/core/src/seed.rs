//! Seed derivation for reproducible parallel sampling.
//!
//! Every random quantity in the crate is drawn from a ChaCha8 stream whose
//! seed is derived from a user-facing base seed and the coordinates of the
//! draw (trial index, cell coordinates, sample index). Derived seeds depend
//! only on those coordinates, never on which worker ran first.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The SplitMix64 output function.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child seed number `index` of `base`.
///
/// This is the `index`-th output of a SplitMix64 generator started at
/// `splitmix64(base)`, so distinct indices give well-separated streams.
#[inline]
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base).wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Platform-independent generator for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
