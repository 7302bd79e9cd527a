use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream of one trial.
pub type TrialRng = ChaCha8Rng;

/// Key of a per-trial random stream.
///
/// The stream is the ChaCha8 keystream for `seed` at stream id
/// `trial_index`, so any trial can be regenerated on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrialRandomness {
    pub seed: u64,
    pub trial_index: u64,
}

impl TrialRandomness {
    pub fn new(seed: u64, trial_index: u64) -> Self {
        TrialRandomness { seed, trial_index }
    }

    pub fn rng(&self) -> TrialRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Mixes `salt` into `seed` (SplitMix64 finaliser) to key independent
/// sub-experiments, e.g. sweep points.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
