//! Seeded random inputs for property tests, law checks and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::rbtree::OrderedTreeMap;
use crate::sources::{DenseVec, SparseVec};

/// Up to `max_len` distinct keys drawn from `0..key_space`, sorted.
pub fn sorted_keys<R: Rng>(rng: &mut R, max_len: usize, key_space: u64) -> Vec<i64> {
    let len = rng.random_range(0..=max_len.min(key_space as usize));
    exact_sorted_keys(rng, len, key_space)
}

/// Exactly `len` distinct keys drawn from `0..key_space`, sorted.
pub fn exact_sorted_keys<R: Rng>(rng: &mut R, len: usize, key_space: u64) -> Vec<i64> {
    let mut keys: Vec<i64> = if key_space <= 1 << 24 {
        sample(rng, key_space as usize, len).into_iter().map(|k| k as i64).collect()
    } else {
        let mut set = std::collections::HashSet::with_capacity(len);
        while set.len() < len {
            set.insert(rng.random_range(0..key_space) as i64);
        }
        set.into_iter().collect()
    };
    keys.sort_unstable();
    keys
}

/// Small nonzero-biased integer values.
pub fn values<R: Rng>(rng: &mut R, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.random_range(-9..=9)).collect()
}

pub fn sparse<R: Rng>(rng: &mut R, max_len: usize, key_space: u64) -> SparseVec<i64, i64> {
    let keys = sorted_keys(rng, max_len, key_space);
    let vals = values(rng, keys.len());
    SparseVec::new(keys, vals).expect("generated keys are sorted")
}

pub fn dense<R: Rng>(rng: &mut R, max_len: usize) -> DenseVec<i64> {
    let len = rng.random_range(0..=max_len);
    DenseVec::from(values(rng, len))
}

/// A tree built by inserting keys in random order.
pub fn tree<R: Rng>(rng: &mut R, max_len: usize, key_space: u64) -> OrderedTreeMap<i64, i64> {
    let len = rng.random_range(0..=max_len.min(key_space as usize));
    let keys = sample(rng, key_space as usize, len);
    keys.into_iter()
        .map(|k| (k as i64, rng.random_range(-9..=9)))
        .collect()
}

/// A two-level sparse matrix: up to `max_rows` rows, each a sparse vector.
pub fn sparse_nested<R: Rng>(
    rng: &mut R,
    max_rows: usize,
    max_cols: usize,
    key_space: u64,
) -> SparseVec<i64, SparseVec<i64, i64>> {
    let rows = sorted_keys(rng, max_rows, key_space);
    let inner = rows.iter().map(|_| sparse(rng, max_cols, key_space)).collect();
    SparseVec::new(rows, inner).expect("generated keys are sorted")
}

/// An `rows × cols` integer matrix with each entry nonzero with probability
/// `density`.
pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.random_bool(density) {
                        rng.random_range(-20..=20)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}
