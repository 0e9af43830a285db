//! Trial-keyed random streams.
//!
//! Every Monte Carlo trial draws from its own ChaCha stream selected by the
//! trial index, so an estimate depends only on `(seed, trials)` and never on
//! how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `trials` independent trials in parallel and counts how many
/// returned `true`.
pub fn count_trials<F>(trials: u64, seed: u64, trial: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    (0..trials)
        .into_par_iter()
        .filter(|&t| trial(&mut trial_rng(seed, t)))
        .count() as u64
}
