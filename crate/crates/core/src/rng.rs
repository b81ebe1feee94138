//! Seeded, stream-addressable random generators.
//!
//! Every random draw in the crate goes through an explicit generator. Runs are
//! reproducible from `(seed, stream)` pairs, which lets independent trials run
//! in any order or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub type TrialRng = ChaCha12Rng;

/// Generator for stream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stable 64-bit seed derivation (SplitMix64 finalizer over `seed` and `index`).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
