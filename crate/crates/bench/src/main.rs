use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use stream_bench::report::{write_csv, write_json};
use stream_bench::{checksums_agree, run, BenchConfig, BenchId, Format};

/// Run one experiment: every variant, timed, with checksums cross-checked.
#[derive(Parser, Debug)]
#[command(name = "bench", version)]
struct Args {
    id: BenchId,
    /// Size for range, nest and v3 (defaults 1e7, 3000, 1e5).
    #[arg(long)]
    n: Option<usize>,
    /// Pairs per relation for triangle.
    #[arg(long, default_value_t = 2_000)]
    rows: usize,
    /// Keys per tree for rb.
    #[arg(long, default_value_t = 100_000)]
    keys: usize,
    /// Trees intersected by rb.
    #[arg(long, default_value_t = 2)]
    ways: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 5)]
    warmup: usize,
    /// Power-law skew of triangle attribute values (0 = uniform).
    #[arg(long, default_value_t = 0.0)]
    skew: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let defaults = BenchConfig::new(args.id);
    let cfg = BenchConfig {
        id: args.id,
        n: args.n.unwrap_or(defaults.n),
        rows: args.rows,
        keys: args.keys,
        ways: args.ways,
        seed: args.seed,
        reps: args.reps,
        warmup: args.warmup,
        skew: args.skew,
        format: args.format,
    };
    let results = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bench: {e}");
            return ExitCode::from(2);
        }
    };
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("bench: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let written = match cfg.format {
        Format::Json => write_json(&results, sink).map_err(|e| e.to_string()),
        Format::Csv => write_csv(&results, sink).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("bench: writing results: {e}");
        return ExitCode::from(2);
    }
    if !checksums_agree(&results) {
        eprintln!("bench: checksum mismatch between variants");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
