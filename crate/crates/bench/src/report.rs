use std::io::Write;

use indexed_streams::StepCounts;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BenchId {
    Range,
    Nest,
    V3,
    Triangle,
    Rb,
}

impl BenchId {
    pub fn name(self) -> &'static str {
        match self {
            BenchId::Range => "range",
            BenchId::Nest => "nest",
            BenchId::V3 => "v3",
            BenchId::Triangle => "triangle",
            BenchId::Rb => "rb",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchConfig {
    pub id: BenchId,
    /// Size for range, nest and v3.
    pub n: usize,
    /// Pairs per relation for triangle.
    pub rows: usize,
    /// Keys per tree for rb.
    pub keys: usize,
    pub ways: usize,
    pub seed: u64,
    pub reps: usize,
    pub warmup: usize,
    pub skew: f64,
    pub format: Format,
}

impl BenchConfig {
    pub fn new(id: BenchId) -> Self {
        BenchConfig {
            id,
            n: match id {
                BenchId::Range => 10_000_000,
                BenchId::Nest => 3_000,
                _ => 100_000,
            },
            rows: 2_000,
            keys: 100_000,
            ways: 2,
            seed: 1,
            reps: 100,
            warmup: 5,
            skew: 0.0,
            format: Format::Json,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchResult {
    pub id: String,
    pub variant: String,
    pub mean_ns: f64,
    pub min_ns: u64,
    pub steps: Option<StepCounts>,
    pub checksum: i64,
    pub config: BenchConfig,
}

/// True when every result reports the same checksum.
pub fn checksums_agree(results: &[BenchResult]) -> bool {
    results.windows(2).all(|w| w[0].checksum == w[1].checksum)
}

pub fn write_json(results: &[BenchResult], out: impl Write) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, results)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    variant: &'a str,
    mean_ns: f64,
    min_ns: u64,
    seeks: Option<u64>,
    probes: Option<u64>,
    emissions: Option<u64>,
    checksum: i64,
    n: usize,
    rows: usize,
    keys: usize,
    ways: usize,
    seed: u64,
    reps: usize,
    warmup: usize,
    skew: f64,
}

pub fn write_csv(results: &[BenchResult], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        let c = &r.config;
        w.serialize(CsvRow {
            id: &r.id,
            variant: &r.variant,
            mean_ns: r.mean_ns,
            min_ns: r.min_ns,
            seeks: r.steps.map(|s| s.seeks),
            probes: r.steps.map(|s| s.probes),
            emissions: r.steps.map(|s| s.emissions),
            checksum: r.checksum,
            n: c.n,
            rows: c.rows,
            keys: c.keys,
            ways: c.ways,
            seed: c.seed,
            reps: c.reps,
            warmup: c.warmup,
            skew: c.skew,
        })?;
    }
    w.flush()?;
    Ok(())
}
