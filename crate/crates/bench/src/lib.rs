//! Benchmark harness: seeded corpora, stream and handwritten variants of
//! each experiment, wall-clock timing and JSON/CSV reports.

pub mod data;
pub mod experiments;
pub mod report;
pub mod timing;

pub use experiments::{run, ConfigError};
pub use report::{checksums_agree, BenchConfig, BenchId, BenchResult, Format};
