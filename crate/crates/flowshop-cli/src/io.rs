//! File formats: processing-time tables as headerless CSV, sweep results as
//! CSV with a JSON metadata sidecar.

use std::fmt::Write as _;

use flowshop_core::sweep::{FiducialStat, Rule, SweepResult};
use flowshop_core::{DistributionSpec, ProcessingTimeTable};

use crate::error::{CliError, Result};

/// Parses a table from CSV text: one row per machine, one column per job,
/// plain decimal numbers, no header. With `tolerate_header` a non-numeric
/// first row is skipped.
pub fn parse_table(text: &str, tolerate_header: bool) -> Result<ProcessingTimeTable> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();

    if tolerate_header {
        if let Some((_, first)) = lines.peek() {
            let numeric = first.split(',').all(|c| c.trim().parse::<f64>().is_ok());
            if !numeric {
                lines.next();
            }
        }
    }

    for (lineno, line) in lines {
        let mut row = Vec::new();
        for (col, cell) in line.split(',').enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| {
                CliError::Validation(format!(
                    "row {}, column {}: not a number: {:?}",
                    lineno + 1,
                    col + 1,
                    cell.trim()
                ))
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(CliError::Validation(format!(
                    "row {}, column {}: durations must be finite and nonnegative (got {value})",
                    lineno + 1,
                    col + 1
                )));
            }
            row.push(value);
        }
        if let Some(w) = width {
            if row.len() != w {
                return Err(CliError::Validation(format!(
                    "row {} has {} columns, expected {w}",
                    lineno + 1,
                    row.len()
                )));
            }
        } else {
            width = Some(row.len());
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(CliError::Validation("empty table".into()));
    }
    ProcessingTimeTable::from_rows(&rows).map_err(Into::into)
}

/// Serializes a table back to headerless CSV. Uses the shortest
/// round-tripping decimal form, so `parse_table(serialize_table(t)) == t`.
#[cfg(test)]
pub fn serialize_table(table: &ProcessingTimeTable) -> String {
    let mut out = String::new();
    for mu in 1..=table.machines() {
        let row: Vec<String> = table.row(mu).iter().map(f64::to_string).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Metadata sidecar describing how a sweep CSV was produced.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct SweepMeta {
    pub machines: usize,
    pub jobs: usize,
    pub spec: DistributionSpec,
    pub rule: Rule,
    pub trials: usize,
    pub seed: u64,
}

/// Sweep CSV: header `nu,mean,stddev,stderr`, one row per fiducial index.
pub fn serialize_sweep(sweep: &SweepResult) -> String {
    let mut out = String::from("nu,mean,stddev,stderr\n");
    for (idx, s) in sweep.stats.iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{}", idx + 1, s.mean, s.stddev, s.stderr);
    }
    out
}

pub fn sweep_meta(sweep: &SweepResult) -> SweepMeta {
    SweepMeta {
        machines: sweep.machines,
        jobs: sweep.jobs,
        spec: sweep.spec.clone(),
        rule: sweep.rule,
        trials: sweep.trials,
        seed: sweep.seed,
    }
}

/// Reads a sweep CSV back into per-fiducial statistics (ordered by `nu`).
pub fn parse_sweep_csv(text: &str) -> Result<Vec<FiducialStat>> {
    let mut rows: Vec<(usize, FiducialStat)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with("nu")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CliError::Validation(format!(
                "row {}: expected 4 fields (nu,mean,stddev,stderr), got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |idx: usize| -> Result<f64> {
            fields[idx].trim().parse().map_err(|_| {
                CliError::Validation(format!(
                    "row {}, column {}: not a number: {:?}",
                    lineno + 1,
                    idx + 1,
                    fields[idx]
                ))
            })
        };
        let nu = parse(0)? as usize;
        rows.push((
            nu,
            FiducialStat { mean: parse(1)?, stddev: parse(2)?, stderr: parse(3)? },
        ));
    }
    if rows.is_empty() {
        return Err(CliError::Validation("empty sweep CSV".into()));
    }
    rows.sort_by_key(|&(nu, _)| nu);
    for (idx, &(nu, _)) in rows.iter().enumerate() {
        if nu != idx + 1 {
            return Err(CliError::Validation(format!(
                "sweep CSV fiducial indices are not 1..=M (missing or duplicate nu around {nu})"
            )));
        }
    }
    Ok(rows.into_iter().map(|(_, s)| s).collect())
}
