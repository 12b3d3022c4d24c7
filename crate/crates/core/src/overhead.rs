//! API-vs-direct timing harness.
//!
//! Each operation runs on an R-MAT workload through the checked entry point
//! in [`crate::kernels`] and through the matching routine in
//! [`crate::kernels::direct`]. Workload construction is not timed.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::algebra::Semiring;
use crate::error::{Error, Result};
use crate::generate;
use crate::kernels::{self, direct, IndexVector};
use crate::matrix::SparseMatrix;

/// Largest accepted bench scale.
pub const MAX_SCALE: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Mxm,
    Mxv,
    EwiseAdd,
    EwiseMult,
    Extract,
    Assign,
    Transpose,
}

impl BenchOp {
    pub const ALL: [BenchOp; 7] = [
        BenchOp::Mxm,
        BenchOp::Mxv,
        BenchOp::EwiseAdd,
        BenchOp::EwiseMult,
        BenchOp::Extract,
        BenchOp::Assign,
        BenchOp::Transpose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Mxm => "mxm",
            BenchOp::Mxv => "mxv",
            BenchOp::EwiseAdd => "ewise_add",
            BenchOp::EwiseMult => "ewise_mult",
            BenchOp::Extract => "extract",
            BenchOp::Assign => "assign",
            BenchOp::Transpose => "transpose",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_owned()))
    }
}

/// Inputs for one `(scale, semiring)` pair, shared by every operation.
pub struct Workload {
    pub semiring: Semiring,
    pub scale: u32,
    /// Undirected R-MAT adjacency.
    pub a: SparseMatrix,
    /// Second R-MAT graph from the next seed, for element-wise operations.
    pub b: SparseMatrix,
    /// One entry per row, for `mxm`.
    pub r: SparseMatrix,
    /// One-hot column vector at the highest-degree vertex.
    pub v: SparseMatrix,
    /// Even vertex ids, for `extract` and `assign`.
    pub even: IndexVector,
    /// `b` restricted to `even x even`, the `assign` source.
    pub b_even: SparseMatrix,
}

impl Workload {
    pub fn new(sr: &Semiring, scale: u32, edge_factor: usize, seed: u64) -> Result<Self> {
        if scale > MAX_SCALE {
            return Err(Error::InvalidArgument(format!("scale {scale} exceeds the limit of {MAX_SCALE}")));
        }
        let a = generate::rmat(sr, scale, edge_factor, seed)?;
        let b = generate::rmat(sr, scale, edge_factor, seed.wrapping_add(1))?;
        let n = a.nrows();
        let perm: Vec<(usize, usize)> = {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(&mut rng);
            cols.into_iter().enumerate().collect()
        };
        let r = generate::adjacency_from_edges(sr, n, &perm, false, seed.wrapping_add(3))?;
        let hub = (0..n).max_by_key(|&i| (a.row(i).0.len(), std::cmp::Reverse(i))).unwrap_or(0);
        let v = SparseMatrix::column_vector(sr, n, &[(hub, sr.one()?)])?;
        let even: IndexVector = (0..n).step_by(2).collect();
        let b_even = kernels::extract(&b, &even, &even)?;
        Ok(Workload {
            semiring: sr.clone(),
            scale,
            a,
            b,
            r,
            v,
            even,
            b_even,
        })
    }

    /// Runs `op` through the checked API and returns the result's entry count.
    pub fn run_api(&self, op: BenchOp) -> Result<usize> {
        let sr = &self.semiring;
        let out = match op {
            BenchOp::Mxm => kernels::mxm(sr, &self.a, &self.r)?,
            BenchOp::Mxv => kernels::mxv(sr, &self.a, &self.v)?,
            BenchOp::EwiseAdd => kernels::ewise_add(sr.add_op(), sr.zero(), &self.a, &self.b)?,
            BenchOp::EwiseMult => kernels::ewise_mult(sr.mul_op(), sr.zero(), &self.a, &self.b)?,
            BenchOp::Extract => kernels::extract(&self.a, &self.even, &self.even)?,
            BenchOp::Assign => kernels::assign(&self.a, &self.even, &self.even, &self.b_even)?,
            BenchOp::Transpose => kernels::transpose(&self.a),
        };
        Ok(out.nnz())
    }

    /// Runs `op` on the unchecked kernel.
    pub fn run_direct(&self, op: BenchOp) -> Result<usize> {
        let sr = &self.semiring;
        let out = match op {
            BenchOp::Mxm => direct::mxm(sr, &self.a, &self.r)?,
            BenchOp::Mxv => direct::mxv(sr, &self.a, &self.v)?,
            BenchOp::EwiseAdd => direct::ewise_add(sr.add_op(), sr.zero(), &self.a, &self.b)?,
            BenchOp::EwiseMult => direct::ewise_mult(sr.mul_op(), sr.zero(), &self.a, &self.b)?,
            BenchOp::Extract => direct::extract(&self.a, &self.even, &self.even)?,
            BenchOp::Assign => direct::assign(&self.a, &self.even, &self.even, &self.b_even)?,
            BenchOp::Transpose => self.a.transpose(),
        };
        Ok(out.nnz())
    }

    pub fn vertices(&self) -> usize {
        self.a.nrows()
    }

    pub fn edges(&self) -> usize {
        self.a.nnz()
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub ops: Vec<BenchOp>,
    pub scales: Vec<u32>,
    pub edge_factor: usize,
    pub semiring: Semiring,
    pub trials: usize,
    pub seed: u64,
    /// Each trial repeats the operation until at least this much time has
    /// passed (the repeat count is fixed per operation during warm-up).
    pub min_trial_time: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ops: BenchOp::ALL.to_vec(),
            scales: (10..=14).collect(),
            edge_factor: 32,
            semiring: Semiring::arith_real(),
            trials: 10,
            seed: 1,
            min_trial_time: Duration::from_millis(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub op: BenchOp,
    pub semiring: String,
    pub scale: u32,
    pub vertices: usize,
    pub edges: usize,
    pub trials: usize,
    pub mean_api_us: f64,
    pub mean_direct_us: f64,
}

impl BenchReport {
    pub fn overhead_pct(&self) -> f64 {
        100.0 * (self.mean_api_us - self.mean_direct_us) / self.mean_direct_us
    }

    pub const CSV_HEADER: &'static str = "op,scale,edges,mean_api_us,mean_direct_us,overhead_pct";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{:.3}",
            self.op,
            self.scale,
            self.edges,
            self.mean_api_us,
            self.mean_direct_us,
            self.overhead_pct()
        )
    }
}

fn time_batch<F: FnMut() -> Result<usize>>(reps: u32, f: &mut F) -> Result<Duration> {
    let start = Instant::now();
    for _ in 0..reps {
        black_box(f()?);
    }
    Ok(start.elapsed())
}

/// Times `op` on a prepared workload. API and direct batches alternate, and
/// which goes first flips every trial.
pub fn measure(w: &Workload, op: BenchOp, trials: usize, min_trial_time: Duration) -> Result<BenchReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut api = || w.run_api(op);
    let mut direct = || w.run_direct(op);

    // Warm-up doubles as calibration.
    let mut reps = 1u32;
    loop {
        let t = time_batch(reps, &mut direct)?;
        time_batch(reps, &mut api)?;
        if t >= min_trial_time || reps >= 1 << 20 {
            break;
        }
        reps = reps.saturating_mul(2);
    }

    let (mut api_total, mut direct_total) = (Duration::ZERO, Duration::ZERO);
    for trial in 0..trials {
        if trial % 2 == 0 {
            api_total += time_batch(reps, &mut api)?;
            direct_total += time_batch(reps, &mut direct)?;
        } else {
            direct_total += time_batch(reps, &mut direct)?;
            api_total += time_batch(reps, &mut api)?;
        }
    }
    let per_run = |d: Duration| (d.as_secs_f64() * 1e6 / (trials as f64 * reps as f64)).max(f64::MIN_POSITIVE);
    Ok(BenchReport {
        op,
        semiring: w.semiring.name().to_owned(),
        scale: w.scale,
        vertices: w.vertices(),
        edges: w.edges(),
        trials,
        mean_api_us: per_run(api_total),
        mean_direct_us: per_run(direct_total),
    })
}

/// Runs every `(scale, op)` pair in `cfg`, calling `on_report` as results arrive.
pub fn run_bench(cfg: &BenchConfig, mut on_report: impl FnMut(&BenchReport)) -> Result<Vec<BenchReport>> {
    if let Some(&s) = cfg.scales.iter().find(|&&s| s > MAX_SCALE) {
        return Err(Error::InvalidArgument(format!("scale {s} exceeds the limit of {MAX_SCALE}")));
    }
    let mut reports = Vec::new();
    for &scale in &cfg.scales {
        let w = Workload::new(&cfg.semiring, scale, cfg.edge_factor, cfg.seed)?;
        for &op in &cfg.ops {
            let r = measure(&w, op, cfg.trials, cfg.min_trial_time)?;
            on_report(&r);
            reports.push(r);
        }
    }
    Ok(reports)
}

/// Median overhead across operations at `scale`, if any were measured.
pub fn median_overhead(reports: &[BenchReport], scale: u32) -> Option<f64> {
    let mut v: Vec<f64> = reports
        .iter()
        .filter(|r| r.scale == scale)
        .map(BenchReport::overhead_pct)
        .collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_names_round_trip() {
        for op in BenchOp::ALL {
            assert_eq!(op.name().parse::<BenchOp>().unwrap(), op);
        }
        assert!("spmv".parse::<BenchOp>().is_err());
    }

    #[test]
    fn api_and_direct_agree() {
        let w = Workload::new(&Semiring::arith_real(), 6, 4, 5).unwrap();
        for op in BenchOp::ALL {
            assert_eq!(w.run_api(op).unwrap(), w.run_direct(op).unwrap(), "{op}");
        }
    }

    #[test]
    fn scale_guard_and_trials() {
        let cfg = BenchConfig {
            scales: vec![MAX_SCALE + 1],
            ..BenchConfig::default()
        };
        assert!(run_bench(&cfg, |_| {}).is_err());
        let w = Workload::new(&Semiring::arith_real(), 4, 2, 0).unwrap();
        assert!(measure(&w, BenchOp::Mxv, 0, Duration::ZERO).is_err());
    }

    #[test]
    fn small_run_reports() {
        let cfg = BenchConfig {
            ops: vec![BenchOp::Transpose, BenchOp::Mxv],
            scales: vec![5],
            edge_factor: 4,
            trials: 2,
            min_trial_time: Duration::from_micros(50),
            ..BenchConfig::default()
        };
        let reports = run_bench(&cfg, |_| {}).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.mean_api_us > 0.0 && r.mean_direct_us > 0.0));
        assert_eq!(reports[0].csv_line().split(',').count(), 6);
        assert!(median_overhead(&reports, 5).is_some());
        assert!(median_overhead(&reports, 6).is_none());
    }
}
