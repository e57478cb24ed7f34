use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer applied to `master + (index + 1) * GOLDEN_GAMMA`.
///
/// This is the substream derivation used everywhere a per-trial generator is
/// needed: trial `i` of a run seeded with `master` draws from
/// `ChaCha8Rng::seed_from_u64(mix(master, i))`.
pub fn mix(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Master seed of a randomized computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Generator for the `index`-th independent substream.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix(self.0, index))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
