//! Seeded, splittable random streams.
//!
//! Every stochastic job is cut into fixed-size blocks and block `i` draws
//! from stream `i` of a ChaCha8 generator keyed by the user seed. Results are
//! therefore identical no matter how blocks are scheduled across workers.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Number of samples or trials handled by one stream.
pub const BLOCK_LEN: usize = 1 << 14;

/// Generator for stream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = StreamRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id reserved for a role-tagged sub-job, e.g. Bob's versus Eve's
/// trials of the same experiment.
pub fn tagged_stream(seed: u64, tag: u32, block: u64) -> StreamRng {
    stream(seed, ((tag as u64) << 40) | block)
}

/// Splits `total` items into `(block_index, len)` chunks of [`BLOCK_LEN`].
pub fn blocks(total: usize) -> impl Iterator<Item = (u64, usize)> + Clone {
    (0..total.div_ceil(BLOCK_LEN)).map(move |b| {
        let start = b * BLOCK_LEN;
        (b as u64, BLOCK_LEN.min(total - start))
    })
}
