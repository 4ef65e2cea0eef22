//! Deterministic seed derivation.
//!
//! Every random choice in the crate is driven by an explicit 64-bit seed. Sub-steps
//! get their own stream through [`derive`], so two constructions that share a seed
//! but take different paths never share random draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed used by the command line when nothing else is given.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Retry budget for every generic-position choice.
pub const RETRY_BUDGET: usize = 32;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sub-step `step` of a computation seeded with `seed`.
pub fn derive(seed: u64, step: u64) -> u64 {
    splitmix64(seed ^ splitmix64(step))
}

/// Seed for a labelled sub-step; the label is hashed with FNV-1a.
pub fn derive_labeled(seed: u64, label: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    derive(seed, h)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Iterator over the seeds of successive retry attempts.
pub fn attempts(seed: u64) -> impl Iterator<Item = u64> {
    (0..RETRY_BUDGET as u64).map(move |i| derive(seed, i))
}
