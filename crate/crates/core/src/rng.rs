//! Deterministic random streams.
//!
//! Every random draw in a game comes from a [`GameRng`] seeded from the game
//! seed. Trials and bootstrap replicates derive their seeds with
//! [`mix_seed`], so results never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GameRng = ChaCha8Rng;

/// Name recorded in run manifests.
pub const PRNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

/// Description of the seed derivation recorded in sweep manifests.
pub const SEED_MIX_NAME: &str = "splitmix64(base ^ splitmix64(index))";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output function applied to `state + GOLDEN_GAMMA`.
///
/// A bijection on `u64`.
#[inline]
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for item `index` of a family rooted at `base`.
///
/// Distinct indices always give distinct seeds for the same base.
#[inline]
pub fn mix_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}

pub fn rng_from_seed(seed: u64) -> GameRng {
    GameRng::seed_from_u64(seed)
}

/// Element `index` of the SplitMix64 sequence started at `key`.
#[inline]
pub(crate) fn splitmix_at(key: u64, index: u64) -> u64 {
    splitmix64(key.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)))
}

/// Maps a uniform 64-bit word onto `0..n` by multiply-shift.
#[inline]
pub(crate) fn reduce(word: u64, n: u64) -> u64 {
    (((word >> 32) * n) >> 32) as u64
}
