//! Counter-based random substreams.
//!
//! Every random draw in the crate comes from a [`Substream`]: a ChaCha8
//! key derived from a master seed plus a 64-bit stream counter. A replicate
//! owns one substream, and each component of a composed model (nested
//! inputs, auxiliary Monte Carlo) branches off it with [`Substream::child`].
//! Results therefore depend on `(seed, stream)` only, never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Substream {
    key: u64,
    stream: u64,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Substream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Substream { key: seed, stream }
    }

    /// Substream of replicate `index` in the batch of paths of length `n`.
    pub fn for_replicate(master_seed: u64, n: u64, index: u64) -> Self {
        Substream {
            key: mix(master_seed ^ mix(n.wrapping_add(0x5151))),
            stream: index,
        }
    }

    /// Independent branch for a sub-component identified by `lane`.
    pub fn child(&self, lane: u64) -> Self {
        Substream {
            key: mix(self.key ^ mix(lane.wrapping_mul(0x2545_f491_4f6c_dd1d))),
            stream: self.stream,
        }
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.key);
        rng.set_stream(self.stream);
        rng
    }
}
