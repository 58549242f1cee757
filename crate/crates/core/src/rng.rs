//! Seeded randomness.
//!
//! Every random stream in the crate is a ChaCha8 generator (a counter-based
//! block cipher) keyed by a 64-bit seed. Child seeds are derived by folding
//! indices into the parent seed with the SplitMix64 finalizer, so a stream
//! depends only on its `(seed, index, ...)` path and never on evaluation
//! order or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and a path of indices.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(seed), |acc, &i| splitmix64(acc ^ splitmix64(i)))
}

pub fn stream(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn child_stream(seed: u64, path: &[u64]) -> StreamRng {
    stream(derive_seed(seed, path))
}
