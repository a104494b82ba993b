//! The benchmark kernels. Stream variants take a counter so the same code
//! is timed with `()` and measured for steps with `&StepCounter`.

use std::hint::black_box;

use indexed_streams::{
    eval_aggregate, eval_nested, Contract, Counter, IndexedStream, OrderedTreeMap,
    RangeStream, SparseVec, StepCounter, StepCounts,
};

use crate::data::{self, Relations, TriangleData};
use crate::report::{BenchConfig, BenchId, BenchResult};
use crate::timing::measure_all;

// range: Σ_{i<n} i mod 5

pub fn range_stream<C: Counter>(n: i64, c: C) -> i64 {
    RangeStream::with_counter(0, n, c).map(|_, v| v % 5).sum()
}

pub fn range_baseline(n: i64) -> i64 {
    let mut result = 0;
    for i in 0..n {
        result += i % 5;
    }
    result
}

// nest: Σ_{i<n} Σ_{j<n} j mod 5

pub fn nest_stream<C: Counter>(n: i64, c: C) -> i64 {
    let outer = RangeStream::with_counter(0, n, c.clone());
    let inner = move |_, _| RangeStream::with_counter(0, n, c.clone()).map(|j, _| j % 5).contract();
    eval_aggregate(outer.map(inner), 0)
}

pub fn nest_baseline(n: i64) -> i64 {
    let mut result = 0;
    for _ in 0..n {
        for j in 0..n {
            result += j % 5;
        }
    }
    result
}

/// Accumulates each row separately before adding it in.
pub fn nest_baseline_2(n: i64) -> i64 {
    let mut result = 0;
    for _ in 0..n {
        let mut a = 0;
        for j in 0..n {
            a += j % 5;
        }
        result += a;
    }
    result
}

// v3: Σ_k a(k)·b(k)·c(k)

pub fn v3_stream<C: Counter>(v: &[SparseVec<i64, i64>; 3], c: C) -> i64 {
    v[0].linear_counted(c.clone())
        .mul(v[1].linear_counted(c.clone()))
        .mul(v[2].linear_counted(c))
        .sum()
}

pub fn v3_gallop<C: Counter>(v: &[SparseVec<i64, i64>; 3], c: C) -> i64 {
    v[0].gallop_counted(c.clone())
        .mul(v[1].gallop_counted(c.clone()))
        .mul(v[2].gallop_counted(c))
        .sum()
}

/// Three-pointer merge: advance every pointer that is behind the maximum.
pub fn v3_baseline(v: &[SparseVec<i64, i64>; 3]) -> i64 {
    let (ak, av) = (v[0].keys(), v[0].values());
    let (bk, bv) = (v[1].keys(), v[1].values());
    let (ck, cv) = (v[2].keys(), v[2].values());
    let (mut i, mut j, mut k) = (0, 0, 0);
    let mut result = 0;
    while i < ak.len() && j < bk.len() && k < ck.len() {
        let (x, y, z) = (ak[i], bk[j], ck[k]);
        if x == y && y == z {
            result += av[i] * bv[j] * cv[k];
            i += 1;
            j += 1;
            k += 1;
        } else {
            let m = x.max(y).max(z);
            i += (x < m) as usize;
            j += (y < m) as usize;
            k += (z < m) as usize;
        }
    }
    result
}

// triangle: Σ R(a,b)·S(b,c)·T(a,c)

/// Iterate R, look up `b` in S, then `a` and `c` in T, all by binary search.
pub fn triangle_naive(rel: &Relations) -> i64 {
    let mut result = 0;
    for (a, rb) in rel.r.iter() {
        for (b, wr) in rb.iter() {
            let Some(sc) = rel.s.get(b) else { continue };
            for (c, ws) in sc.iter() {
                if let Some(wt) = rel.t.get(a).and_then(|tc| tc.get(c)) {
                    result += wr * ws * wt;
                }
            }
        }
    }
    result
}

/// Joins R with S into a materialized `a → b → c` relation, then joins that
/// with T on `(a, c)`.
pub fn triangle_unfused<C: Counter + Copy>(rel: &Relations, c: C) -> i64 {
    let s = &rel.s;
    let rs = rel.r.gallop_counted(c).map(move |_, rb| {
        rb.counted(c).zip_with(s.gallop_counted(c), move |wr: i64, sc| {
            sc.counted(c).map(move |_, ws: i64| wr * ws)
        })
    });
    let temp: SparseVec<&str, SparseVec<&str, SparseVec<&str, i64>>> =
        eval_nested(rs, SparseVec::empty());
    let joined = temp
        .gallop_counted(c)
        .zip_with(rel.t.gallop_counted(c), move |ab, tc| {
            let tc = tc.counted(c);
            ab.counted(c)
                .map(move |_, bc| bc.counted(c).mul(tc.clone()).contract())
                .contract()
        });
    eval_aggregate(joined, 0)
}

/// One pass: `a` over R ⋈ T, then `b` over R(a) ⋈ S, then `c` over S(b) ⋈ T(a).
pub fn triangle_fused<C: Counter + Copy>(rel: &Relations, c: C) -> i64 {
    let s = &rel.s;
    let q = rel.r.gallop_counted(c).zip_with(rel.t.gallop_counted(c), move |rb, tc| {
        let tc = tc.counted(c);
        rb.counted(c)
            .zip_with(s.gallop_counted(c), move |wr: i64, sc| {
                sc.counted(c)
                    .mul(tc.clone())
                    .map(move |_, w| wr * w)
                    .contract()
            })
            .contract()
    });
    eval_aggregate(q, 0)
}

/// Triple loop over the raw pair lists.
pub fn triangle_oracle(d: &TriangleData) -> i64 {
    let mut result = 0;
    for (a, b, wr) in d.pairs(0) {
        for (b2, c, ws) in d.pairs(1) {
            if b != b2 {
                continue;
            }
            for (a2, c2, wt) in d.pairs(2) {
                if a == a2 && c == c2 {
                    result += wr * ws * wt;
                }
            }
        }
    }
    result
}

// rb: keys common to every tree, reported as their sum

pub fn rb_stream<C: Counter>(trees: &[OrderedTreeMap<i64, i64>], c: C) -> i64 {
    let sum_keys = |acc: i64, k: i64, _| acc + k;
    match trees {
        [x, y] => x.stream_counted(c.clone()).mul(y.stream_counted(c)).fold(0, sum_keys),
        [x, y, z] => x
            .stream_counted(c.clone())
            .mul(y.stream_counted(c.clone()))
            .mul(z.stream_counted(c))
            .fold(0, sum_keys),
        _ => panic!("rb intersects 2 or 3 trees"),
    }
}

/// Iterate the first tree and look each key up in the others.
pub fn rb_baseline(trees: &[OrderedTreeMap<i64, i64>]) -> i64 {
    let (first, rest) = trees.split_first().expect("at least one tree");
    let mut result = 0;
    for (k, _) in first.iter() {
        if rest.iter().all(|t| t.contains_key(k)) {
            result += k;
        }
    }
    result
}

pub fn rb_stream_keys(trees: &[OrderedTreeMap<i64, i64>]) -> Vec<i64> {
    let keys = |acc: Vec<i64>, k, _| {
        let mut acc = acc;
        acc.push(k);
        acc
    };
    match trees {
        [x, y] => x.stream().mul(y.stream()).fold(Vec::new(), keys),
        [x, y, z] => x.stream().mul(y.stream()).mul(z.stream()).fold(Vec::new(), keys),
        _ => panic!("rb intersects 2 or 3 trees"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn validate(cfg: &BenchConfig) -> Result<(), ConfigError> {
    let err = |m: &str| Err(ConfigError(m.to_string()));
    match cfg.id {
        BenchId::Range | BenchId::Nest | BenchId::V3 if cfg.n == 0 => err("--n must be at least 1"),
        BenchId::Triangle if cfg.rows == 0 => err("--rows must be at least 1"),
        BenchId::Triangle if !(cfg.skew >= 0.0 && cfg.skew.is_finite()) => {
            err("--skew must be a finite non-negative number")
        }
        BenchId::Rb if cfg.keys == 0 => err("--keys must be at least 1"),
        BenchId::Rb if !(2..=3).contains(&cfg.ways) => err("--ways must be 2 or 3"),
        _ => Ok(()),
    }
}

type Variant<'a> = (&'static str, Box<dyn FnMut() -> i64 + 'a>);

/// Times the variants round-robin, then attaches step counts.
fn time_all(cfg: &BenchConfig, mut variants: Vec<Variant>, steps: Vec<Option<StepCounts>>) -> Vec<BenchResult> {
    let mut fs: Vec<&mut dyn FnMut() -> i64> = variants.iter_mut().map(|(_, f)| &mut **f as _).collect();
    let timings = measure_all(cfg.warmup, cfg.reps, &mut fs);
    variants
        .iter()
        .zip(timings)
        .zip(steps)
        .map(|(((name, _), (t, checksum)), steps)| BenchResult {
            id: cfg.id.name().to_string(),
            variant: name.to_string(),
            mean_ns: t.mean_ns,
            min_ns: t.min_ns,
            steps,
            checksum,
            config: cfg.clone(),
        })
        .collect()
}

fn counted(f: impl Fn(&StepCounter) -> i64) -> Option<StepCounts> {
    let c = StepCounter::new();
    f(&c);
    Some(c.snapshot())
}

/// Runs every variant of `cfg.id` and returns one result per variant.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchResult>, ConfigError> {
    validate(cfg)?;
    let results = match cfg.id {
        BenchId::Range => {
            let n = cfg.n as i64;
            time_all(
                cfg,
                vec![
                    ("stream", Box::new(|| range_stream(black_box(n), ()))),
                    ("baseline", Box::new(|| range_baseline(black_box(n)))),
                ],
                vec![counted(|c| range_stream(n, c)), None],
            )
        }
        BenchId::Nest => {
            let n = cfg.n as i64;
            time_all(
                cfg,
                vec![
                    ("stream", Box::new(|| nest_stream(black_box(n), ()))),
                    ("baseline", Box::new(|| nest_baseline(black_box(n)))),
                    ("baseline2", Box::new(|| nest_baseline_2(black_box(n)))),
                ],
                vec![counted(|c| nest_stream(n, c)), None, None],
            )
        }
        BenchId::V3 => {
            let v = data::v3(cfg.n, cfg.seed);
            time_all(
                cfg,
                vec![
                    ("stream", Box::new(|| v3_stream(black_box(&v), ()))),
                    ("gallop", Box::new(|| v3_gallop(black_box(&v), ()))),
                    ("baseline", Box::new(|| v3_baseline(black_box(&v)))),
                ],
                vec![counted(|c| v3_stream(&v, c)), counted(|c| v3_gallop(&v, c)), None],
            )
        }
        BenchId::Triangle => {
            let d = TriangleData::generate(cfg.rows, cfg.skew, cfg.seed);
            let rel = d.relations();
            time_all(
                cfg,
                vec![
                    ("naive", Box::new(|| triangle_naive(black_box(&rel)))),
                    ("unfused", Box::new(|| triangle_unfused(black_box(&rel), ()))),
                    ("fused", Box::new(|| triangle_fused(black_box(&rel), ()))),
                ],
                vec![
                    None,
                    counted(|c| triangle_unfused(&rel, c)),
                    counted(|c| triangle_fused(&rel, c)),
                ],
            )
        }
        BenchId::Rb => {
            let trees = data::rb_trees(cfg.ways, cfg.keys, cfg.seed);
            time_all(
                cfg,
                vec![
                    ("stream", Box::new(|| rb_stream(black_box(&trees), ()))),
                    ("baseline", Box::new(|| rb_baseline(black_box(&trees)))),
                ],
                vec![counted(|c| rb_stream(&trees, c)), None],
            )
        }
    };
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_example() {
        assert_eq!(range_stream(5, ()), 10);
        assert_eq!(range_baseline(5), 10);
    }

    #[test]
    fn nest_variants_agree() {
        for n in [1, 2, 7, 30] {
            let want: i64 = (0..n).map(|j| j % 5).sum::<i64>() * n;
            assert_eq!(nest_stream(n, ()), want);
            assert_eq!(nest_baseline(n), want);
            assert_eq!(nest_baseline_2(n), want);
        }
    }

    #[test]
    fn range_counts_one_seek_per_element() {
        let c = StepCounter::new();
        range_stream(100, &c);
        assert_eq!(c.seeks(), 100);
        assert_eq!(range_stream(0, ()), 0);
    }
}
