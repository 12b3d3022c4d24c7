//! Shared workloads for the criterion benches.

use sparsegraph_core::overhead::Workload;
use sparsegraph_core::{Result, Semiring};

/// Scales benchmarked by default. Override with `SPARSEGRAPH_BENCH_SCALES=8-12`.
pub const DEFAULT_SCALES: std::ops::RangeInclusive<u32> = 10..=12;
pub const EDGE_FACTOR: usize = 16;
pub const SEED: u64 = 1;

pub fn scales() -> Vec<u32> {
    let Ok(text) = std::env::var("SPARSEGRAPH_BENCH_SCALES") else {
        return DEFAULT_SCALES.collect();
    };
    let parse = |s: &str| s.trim().parse::<u32>().expect("scale must be an integer");
    match text.split_once('-') {
        Some((lo, hi)) => (parse(lo)..=parse(hi)).collect(),
        None => vec![parse(&text)],
    }
}

pub fn workloads(sr: &Semiring) -> Result<Vec<Workload>> {
    scales()
        .into_iter()
        .map(|s| Workload::new(sr, s, EDGE_FACTOR, SEED))
        .collect()
}
