//! Running many independent seeded test cases.
//!
//! Case `i` of a batch seeded with `seed` always sees the same RNG stream,
//! so results do not depend on scheduling. With the `parallel` feature the
//! cases are spread over rayon's pool; without it, or with
//! [`Schedule::Sequential`], they run in order on the calling thread.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub message: String,
}

/// The RNG for case `case` of a batch.
pub fn case_rng(seed: u64, case: usize) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs `cases` cases and returns the failures in case order.
pub fn run_cases<F>(cases: usize, seed: u64, schedule: Schedule, f: F) -> Vec<CaseFailure>
where
    F: Fn(usize, &mut SplitMix64) -> Result<(), String> + Sync + Send,
{
    let one = |i: usize| {
        f(i, &mut case_rng(seed, i))
            .err()
            .map(|message| CaseFailure { case: i, message })
    };
    match schedule {
        #[cfg(feature = "parallel")]
        Schedule::Parallel => {
            use rayon::prelude::*;
            (0..cases).into_par_iter().filter_map(one).collect()
        }
        _ => (0..cases).filter_map(one).collect(),
    }
}
