//! Monte Carlo sweeps of mean makespan versus fiducial index.
//!
//! Each trial draws a fresh processing time table from its own substream,
//! optionally reorders the job columns with a dispatching rule, and runs the
//! full fiducial sweep. Per-fiducial statistics accumulate in streaming
//! (Welford) form, so large sweeps stay in `O(M)` memory.

use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{substream, DistributionSpec};
use crate::error::{Error, Result};
use crate::schedule::sweep_fiducial;
use crate::table::ProcessingTimeTable;

/// Job-ordering dispatching rule, keyed off machine 1's processing times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Rule {
    /// Keep the given job order.
    Normal,
    /// Shortest processing time on machine 1 first.
    Spt,
    /// Longest processing time on machine 1 first.
    Lpt,
}

/// Reorders job columns by `rule`. Sorting is stable, so ties keep their
/// original job order, and applying a rule twice equals applying it once.
pub fn reorder_jobs(table: &ProcessingTimeTable, rule: Rule) -> ProcessingTimeTable {
    match rule {
        Rule::Normal => table.clone(),
        Rule::Spt | Rule::Lpt => {
            let key = table.row(1);
            let mut order: Vec<usize> = (1..=table.jobs()).collect();
            order.sort_by(|&a, &b| {
                let (ka, kb) = (key[a - 1], key[b - 1]);
                match rule {
                    Rule::Spt => ka.partial_cmp(&kb).expect("finite durations"),
                    _ => kb.partial_cmp(&ka).expect("finite durations"),
                }
            });
            table.permute_jobs(&order).expect("order is a permutation")
        }
    }
}

/// Mean makespan with dispersion for one fiducial index.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiducialStat {
    pub mean: f64,
    /// Sample standard deviation over trials (0 for a single trial).
    pub stddev: f64,
    /// `stddev / √trials`.
    pub stderr: f64,
}

/// Per-fiducial-index makespan statistics over Monte Carlo trials.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub machines: usize,
    pub jobs: usize,
    pub spec: DistributionSpec,
    pub rule: Rule,
    pub trials: usize,
    pub seed: u64,
    /// Index `ν-1` holds the statistics for fiducial machine `ν`.
    pub stats: Vec<FiducialStat>,
}

impl SweepResult {
    /// Mean makespans in fiducial order.
    pub fn means(&self) -> Vec<f64> {
        self.stats.iter().map(|s| s.mean).collect()
    }
}

/// Runs `trials` independent sweeps and aggregates per-fiducial statistics.
///
/// Trial `t` draws its table from `substream(seed, t)`; the result is
/// identical however the trials are scheduled.
pub fn monte_carlo_sweep(
    spec: &DistributionSpec,
    machines: usize,
    jobs: usize,
    trials: usize,
    seed: u64,
    rule: Rule,
) -> Result<SweepResult> {
    spec.validate()?;
    if machines == 0 || jobs == 0 || trials == 0 {
        return Err(Error::Domain(alloc::format!(
            "machines, jobs, and trials must be >= 1 (got {machines}, {jobs}, {trials})"
        )));
    }

    let mut mean = vec![0.0_f64; machines];
    let mut m2 = vec![0.0_f64; machines];
    for t in 0..trials {
        let table = sample_trial_table(spec, machines, jobs, seed, t)?;
        let table = reorder_jobs(&table, rule);
        let makespans = sweep_fiducial(&table);
        let count = (t + 1) as f64;
        for (nu, &value) in makespans.iter().enumerate() {
            let delta = value - mean[nu];
            mean[nu] += delta / count;
            m2[nu] += delta * (value - mean[nu]);
        }
    }

    let stats = (0..machines)
        .map(|nu| {
            let stddev = if trials > 1 {
                libm::sqrt(m2[nu] / (trials as f64 - 1.0))
            } else {
                0.0
            };
            FiducialStat { mean: mean[nu], stddev, stderr: stddev / libm::sqrt(trials as f64) }
        })
        .collect();

    Ok(SweepResult { machines, jobs, spec: spec.clone(), rule, trials, seed, stats })
}

/// The table trial `t` of a sweep draws, before any dispatching rule.
pub fn sample_trial_table(
    spec: &DistributionSpec,
    machines: usize,
    jobs: usize,
    seed: u64,
    trial: usize,
) -> Result<ProcessingTimeTable> {
    let mut rng = substream(seed, trial as u64);
    let mut entries = Vec::with_capacity(machines * jobs);
    for _ in 0..machines * jobs {
        entries.push(spec.sample(&mut rng));
    }
    ProcessingTimeTable::new(machines, jobs, entries)
}

/// Per-fiducial relative differences `(mean_other - mean_base)/mean_base`
/// with their extremes over `ν`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleComparison {
    pub min_rel: f64,
    pub max_rel: f64,
    pub per_nu: Vec<f64>,
}

/// Compares two sweeps of the same system (same dimensions, spec, and trial
/// count), e.g. an SPT or LPT sweep against the normal rule.
pub fn compare_rules(base: &SweepResult, other: &SweepResult) -> Result<RuleComparison> {
    if base.machines != other.machines
        || base.jobs != other.jobs
        || base.trials != other.trials
        || base.spec != other.spec
    {
        return Err(Error::DimensionMismatch(alloc::format!(
            "sweeps disagree: {}x{} x{} vs {}x{} x{}",
            base.machines, base.jobs, base.trials, other.machines, other.jobs, other.trials
        )));
    }
    let per_nu: Vec<f64> = base
        .stats
        .iter()
        .zip(&other.stats)
        .map(|(b, o)| (o.mean - b.mean) / b.mean)
        .collect();
    let min_rel = per_nu.iter().copied().fold(f64::INFINITY, f64::min);
    let max_rel = per_nu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RuleComparison { min_rel, max_rel, per_nu })
}
