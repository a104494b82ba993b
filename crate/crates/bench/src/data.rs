//! Seeded input corpora. Every generator draws from a SplitMix64 stream
//! seeded with the config seed, so equal (sizes, seed) give equal data.

use std::collections::{BTreeMap, HashSet};

use indexed_streams::testgen::exact_sorted_keys;
use indexed_streams::{OrderedTreeMap, SparseVec};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Three sparse vectors of `n` keys each over `0..4n`. A tenth of the keys
/// are shared by all three; the rest are drawn independently.
pub fn v3(n: usize, seed: u64) -> [SparseVec<i64, i64>; 3] {
    let mut rng = rng(seed);
    let space = 4 * n.max(1);
    let planted: Vec<usize> = sample(&mut rng, space, n / 10).into_vec();
    let planted_set: HashSet<usize> = planted.iter().copied().collect();
    std::array::from_fn(|_| {
        let mut keys: HashSet<usize> = planted_set.clone();
        while keys.len() < n {
            keys.insert(rng.random_range(0..space));
        }
        let mut keys: Vec<i64> = keys.into_iter().map(|k| k as i64).collect();
        keys.sort_unstable();
        let values = (0..keys.len()).map(|_| rng.random_range(1..=9)).collect();
        SparseVec::new(keys, values).expect("sorted")
    })
}

/// `ways` trees of `keys` distinct random keys from `0..2·keys`.
pub fn rb_trees(ways: usize, keys: usize, seed: u64) -> Vec<OrderedTreeMap<i64, i64>> {
    let mut rng = rng(seed);
    (0..ways)
        .map(|_| {
            let mut ks = exact_sorted_keys(&mut rng, keys, 2 * keys.max(1) as u64);
            // insert in random order so the tree shape is not a sorted build
            for i in (1..ks.len()).rev() {
                ks.swap(i, rng.random_range(0..=i));
            }
            ks.into_iter().map(|k| (k, 1)).collect()
        })
        .collect()
}

/// One relation of the triangle query: `x → y → weight`.
pub type Rel<'a> = SparseVec<&'a str, SparseVec<&'a str, i64>>;

pub struct Relations<'a> {
    pub r: Rel<'a>,
    pub s: Rel<'a>,
    pub t: Rel<'a>,
}

/// Three relations of unique string pairs `(x, y, weight)` over a shared
/// pool of fixed-width decimal strings.
///
/// Attribute values are drawn from the pool with `index = ⌊D·u^(1+skew)⌋`
/// for uniform `u`, so `skew = 0` is uniform and larger values concentrate
/// mass on a few popular strings.
pub struct TriangleData {
    pool: Vec<String>,
    pairs: [Vec<(u32, u32, i64)>; 3],
}

impl TriangleData {
    pub fn domain(rows: usize) -> usize {
        // about ten pairs per attribute value, with room for unique pairs
        (rows / 10).max((4.0 * rows as f64).sqrt().ceil() as usize).max(1)
    }

    pub fn generate(rows: usize, skew: f64, seed: u64) -> TriangleData {
        let mut rng = rng(seed);
        let d = Self::domain(rows);
        let mut seen = HashSet::with_capacity(d);
        let mut pool = Vec::with_capacity(d);
        while pool.len() < d {
            let x: u32 = rng.random();
            if seen.insert(x) {
                pool.push(format!("{x:010}"));
            }
        }
        let draw = |rng: &mut SplitMix64| {
            let u: f64 = rng.random();
            ((d as f64 * u.powf(1.0 + skew)) as usize).min(d - 1) as u32
        };
        let pairs = std::array::from_fn(|_| {
            let mut used = HashSet::with_capacity(rows);
            let mut out = Vec::with_capacity(rows);
            let mut attempts = 0usize;
            while out.len() < rows && attempts < 64 * rows + 1024 {
                attempts += 1;
                let (x, y) = (draw(&mut rng), draw(&mut rng));
                if used.insert((x, y)) {
                    out.push((x, y, rng.random_range(1..=7)));
                }
            }
            out
        });
        TriangleData { pool, pairs }
    }

    /// Number of pairs in each relation. Heavy skew can leave fewer than
    /// requested once the popular pairs are used up.
    pub fn sizes(&self) -> [usize; 3] {
        std::array::from_fn(|i| self.pairs[i].len())
    }

    /// String pairs of relation `i` (0 = R, 1 = S, 2 = T).
    pub fn pairs(&self, i: usize) -> impl Iterator<Item = (&str, &str, i64)> {
        self.pairs[i]
            .iter()
            .map(|&(x, y, w)| (self.pool[x as usize].as_str(), self.pool[y as usize].as_str(), w))
    }

    fn relation(&self, i: usize) -> Rel<'_> {
        let mut nested: BTreeMap<&str, BTreeMap<&str, i64>> = BTreeMap::new();
        for (x, y, w) in self.pairs(i) {
            nested.entry(x).or_default().insert(y, w);
        }
        SparseVec::from_pairs(
            nested
                .into_iter()
                .map(|(x, ys)| (x, SparseVec::from_pairs(ys).expect("sorted"))),
        )
        .expect("sorted")
    }

    /// `R(a,b)`, `S(b,c)`, `T(a,c)` in nested sorted-array form.
    pub fn relations(&self) -> Relations<'_> {
        Relations {
            r: self.relation(0),
            s: self.relation(1),
            t: self.relation(2),
        }
    }
}
