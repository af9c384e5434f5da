//! Reproducible random streams.
//!
//! Every Monte Carlo batch draws from its own ChaCha8 stream keyed by
//! `(seed, stream)`, so results do not depend on how batches are scheduled
//! across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used by the command-line tools when none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

pub fn replica_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
