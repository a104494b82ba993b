use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indexed_streams::batch::{run_cases, Schedule};
use indexed_streams::semantics::laws::{check_all, Probes};
use indexed_streams::testgen;
use indexed_streams::IndexedStream;
use stream_bench::data::{self, TriangleData};
use stream_bench::experiments::*;

/// The law harness over a batch of seeded cases, under both schedules.
fn law_batches(c: &mut Criterion) {
    let mut g = c.benchmark_group("law_batch");
    g.sample_size(10);
    let batch = |schedule| {
        run_cases(64, 7, schedule, |case, rng| {
            let a = testgen::sparse(rng, 48, 96);
            let b = testgen::sparse(rng, 48, 96);
            let mut keys = a.keys().to_vec();
            keys.extend_from_slice(b.keys());
            let p = Probes::for_support(&keys, case as u64);
            match check_all(&a.gallop().mul(b.linear()), &p, 1 << 12).iter().find(|r| !r.passed()) {
                Some(r) => Err(r.to_string()),
                None => Ok(()),
            }
        })
    };
    g.bench_function("parallel", |b| b.iter(|| batch(Schedule::Parallel)));
    g.bench_function("sequential", |b| b.iter(|| batch(Schedule::Sequential)));
    g.finish();
}

fn fusion(c: &mut Criterion) {
    let mut g = c.benchmark_group("fusion");
    let n = 1_000_000i64;
    g.bench_with_input(BenchmarkId::new("range.stream", n), &n, |b, &n| b.iter(|| range_stream(black_box(n), ())));
    g.bench_with_input(BenchmarkId::new("range.baseline", n), &n, |b, &n| b.iter(|| range_baseline(black_box(n))));
    let n = 1_000i64;
    g.bench_with_input(BenchmarkId::new("nest.stream", n), &n, |b, &n| b.iter(|| nest_stream(black_box(n), ())));
    g.bench_with_input(BenchmarkId::new("nest.baseline", n), &n, |b, &n| b.iter(|| nest_baseline(black_box(n))));
    g.bench_with_input(BenchmarkId::new("nest.baseline2", n), &n, |b, &n| b.iter(|| nest_baseline_2(black_box(n))));
    let v = data::v3(100_000, 1);
    g.bench_function("v3.stream", |b| b.iter(|| v3_stream(black_box(&v), ())));
    g.bench_function("v3.gallop", |b| b.iter(|| v3_gallop(black_box(&v), ())));
    g.bench_function("v3.baseline", |b| b.iter(|| v3_baseline(black_box(&v))));
    g.finish();
}

fn triangle(c: &mut Criterion) {
    let mut g = c.benchmark_group("triangle");
    let d = TriangleData::generate(2_000, 0.0, 1);
    let rel = d.relations();
    g.bench_function("naive", |b| b.iter(|| triangle_naive(black_box(&rel))));
    g.bench_function("unfused", |b| b.iter(|| triangle_unfused(black_box(&rel), ())));
    g.bench_function("fused", |b| b.iter(|| triangle_fused(black_box(&rel), ())));
    g.finish();
}

fn red_black(c: &mut Criterion) {
    let mut g = c.benchmark_group("rb");
    g.sample_size(20);
    for ways in [2, 3] {
        let trees = data::rb_trees(ways, 100_000, 1);
        g.bench_function(BenchmarkId::new("stream", ways), |b| b.iter(|| rb_stream(black_box(&trees), ())));
        g.bench_function(BenchmarkId::new("lookup", ways), |b| b.iter(|| rb_baseline(black_box(&trees))));
    }
    g.finish();
}

criterion_group!(benches, law_batches, fusion, triangle, red_black);
criterion_main!(benches);
