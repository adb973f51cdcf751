//! Counter-keyed random streams: every (seed, substream, trial) triple names
//! an independent ChaCha8 stream, so trials can run in any order on any
//! number of workers and still see the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Substream identifiers. Each physical quantity has its own stream so that
/// changing how many values one of them consumes never shifts the others.
pub const GEOMETRY: u64 = 0;
pub const UE_FADING: u64 = 1;
pub const ED_FADING: u64 = 2;
pub const SELF_INTERFERENCE: u64 = 3;

/// SplitMix64 finalizer: a bijective 64-bit mixer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Generator for one substream; individual trials select their stream with
/// [`StreamKey::for_trial`].
#[derive(Debug, Clone)]
pub struct StreamKey {
    base: ChaCha8Rng,
}

impl StreamKey {
    pub fn new(seed: u64, substream: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed ^ splitmix64(substream.wrapping_add(0x5EED));
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        StreamKey {
            base: ChaCha8Rng::from_seed(key),
        }
    }

    /// A fresh generator positioned at the start of stream `trial`.
    pub fn for_trial(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(trial);
        rng.set_word_pos(0);
        rng
    }
}

/// The four substream keys used by one Monte Carlo run.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    pub geometry: StreamKey,
    pub ue_fading: StreamKey,
    pub ed_fading: StreamKey,
    pub self_interference: StreamKey,
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        TrialStreams {
            geometry: StreamKey::new(seed, GEOMETRY),
            ue_fading: StreamKey::new(seed, UE_FADING),
            ed_fading: StreamKey::new(seed, ED_FADING),
            self_interference: StreamKey::new(seed, SELF_INTERFERENCE),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = StreamKey::new(42, GEOMETRY);
        let b = StreamKey::new(42, GEOMETRY);
        assert_eq!(a.for_trial(7).next_u64(), b.for_trial(7).next_u64());
        assert_ne!(a.for_trial(7).next_u64(), a.for_trial(8).next_u64());
        let c = StreamKey::new(42, UE_FADING);
        assert_ne!(a.for_trial(7).next_u64(), c.for_trial(7).next_u64());
        let d = StreamKey::new(43, GEOMETRY);
        assert_ne!(a.for_trial(7).next_u64(), d.for_trial(7).next_u64());
    }

    #[test]
    fn splitmix_known_value() {
        // First output of the reference SplitMix64 generator seeded with 0.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
    }
}
