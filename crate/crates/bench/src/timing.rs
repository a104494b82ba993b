//! Wall-clock measurement: `warmup` unmeasured runs, then `reps` timed runs.

use std::hint::black_box;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub mean_ns: f64,
    pub min_ns: u64,
}

/// Times `f`, returning the timing and the value of the last run.
pub fn measure<T>(warmup: usize, reps: usize, mut f: impl FnMut() -> T) -> (Timing, T) {
    let mut out = measure_all(warmup, reps, &mut [&mut f]);
    out.pop().expect("one variant")
}

/// Times several variants round-robin: each round runs every variant once,
/// so slow phases of a noisy machine fall on all of them alike.
pub fn measure_all<T>(warmup: usize, reps: usize, fs: &mut [&mut dyn FnMut() -> T]) -> Vec<(Timing, T)> {
    for _ in 0..warmup {
        for f in fs.iter_mut() {
            black_box(f());
        }
    }
    let reps = reps.max(1);
    let mut total = vec![0u128; fs.len()];
    let mut min = vec![u64::MAX; fs.len()];
    let mut last: Vec<Option<T>> = fs.iter().map(|_| None).collect();
    for _ in 0..reps {
        for (i, f) in fs.iter_mut().enumerate() {
            let start = Instant::now();
            let out = black_box(f());
            let ns = start.elapsed().as_nanos();
            total[i] += ns;
            min[i] = min[i].min(ns as u64);
            last[i] = Some(out);
        }
    }
    last.into_iter()
        .enumerate()
        .map(|(i, out)| {
            let t = Timing {
                mean_ns: total[i] as f64 / reps as f64,
                min_ns: min[i],
            };
            (t, out.expect("at least one rep"))
        })
        .collect()
}
