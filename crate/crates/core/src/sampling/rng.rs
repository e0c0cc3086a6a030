//! Reproducible random streams.
//!
//! A draw is identified by `(seed, construction tag, sample index)`. The tag
//! is mixed into the seed so different constructions never share a stream,
//! and the index selects a ChaCha stream so draws are independent of the
//! order (or thread) in which they are generated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one named construction under a master seed.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    tag.bytes().fold(splitmix64(seed), |h, b| splitmix64(h ^ b as u64))
}

/// Generator for sample `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
