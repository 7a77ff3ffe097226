//! Seeded random streams.
//!
//! Every stochastic routine takes an explicit `&mut impl Rng`. Sweeps derive
//! one independent ChaCha stream per `(scale index, run)` from a single
//! master seed, so results do not depend on scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type RandomStream = ChaCha8Rng;

/// Stream `id` of the generator keyed by `seed`.
pub fn stream(seed: u64, id: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Stream id for one `(scale index, run)` cell of a sweep.
pub fn cell_stream_id(scale_index: usize, run: usize) -> u64 {
    ((scale_index as u64) << 32) | (run as u64 & 0xffff_ffff)
}
