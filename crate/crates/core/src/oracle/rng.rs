//! Counter-based random streams.
//!
//! Every chunk of Monte Carlo work draws from its own ChaCha8 stream,
//! addressed by `(seed, task, chunk)`. Results therefore do not depend on
//! which thread runs a chunk or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator for chunk `chunk` of task `task` under `seed`.
///
/// `task` identifies an independent piece of work (a configuration, or one
/// side of a comparison); at most `2^32` chunks per task are addressable.
pub fn stream(seed: u64, task: u32, chunk: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(task) << 32) | u64::from(chunk));
    rng
}
