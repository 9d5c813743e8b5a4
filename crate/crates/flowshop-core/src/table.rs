//! Processing time tables.
//!
//! A table holds the duration `x_{μ,i}` of job `i` on machine `μ`. All
//! external indices are 1-based (`μ ∈ 1..=M`, `i ∈ 1..=N`) to match the
//! usual scheduling notation.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An `M×N` matrix of nonnegative, finite processing times.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProcessingTimeTable {
    machines: usize,
    jobs: usize,
    /// Row-major, `entries[(μ-1) * jobs + (i-1)]`.
    entries: Vec<f64>,
}

impl ProcessingTimeTable {
    /// Builds a table from row-major entries, validating shape and values.
    pub fn new(machines: usize, jobs: usize, entries: Vec<f64>) -> Result<Self> {
        if machines == 0 || jobs == 0 {
            return Err(Error::Domain(format!(
                "table must have at least one machine and one job (got {machines}x{jobs})"
            )));
        }
        if entries.len() != machines * jobs {
            return Err(Error::DimensionMismatch(format!(
                "expected {machines}x{jobs} = {} entries, got {}",
                machines * jobs,
                entries.len()
            )));
        }
        for (idx, &x) in entries.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                let mu = idx / jobs + 1;
                let i = idx % jobs + 1;
                return Err(Error::Domain(format!(
                    "entry ({mu},{i}) = {x} must be finite and nonnegative"
                )));
            }
        }
        Ok(Self { machines, jobs, entries })
    }

    /// Builds a table from per-machine rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let machines = rows.len();
        let jobs = rows.first().map_or(0, Vec::len);
        for (mu, row) in rows.iter().enumerate() {
            if row.len() != jobs {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {jobs}",
                    mu + 1,
                    row.len()
                )));
            }
        }
        let mut entries = Vec::with_capacity(machines * jobs);
        for row in rows {
            entries.extend_from_slice(row);
        }
        Self::new(machines, jobs, entries)
    }

    /// Number of machines `M`.
    pub fn machines(&self) -> usize {
        self.machines
    }

    /// Number of jobs `N`.
    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Duration `x_{μ,i}` (1-based indices).
    pub fn get(&self, mu: usize, i: usize) -> f64 {
        assert!(mu >= 1 && mu <= self.machines, "machine index {mu} out of range");
        assert!(i >= 1 && i <= self.jobs, "job index {i} out of range");
        self.entries[(mu - 1) * self.jobs + (i - 1)]
    }

    /// The durations of machine `mu` (1-based) in job order.
    pub fn row(&self, mu: usize) -> &[f64] {
        assert!(mu >= 1 && mu <= self.machines, "machine index {mu} out of range");
        &self.entries[(mu - 1) * self.jobs..mu * self.jobs]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Necessary processing time `y_μ = Σ_i x_{μ,i}` per machine.
    pub fn row_totals(&self) -> Vec<f64> {
        (1..=self.machines)
            .map(|mu| self.row(mu).iter().sum())
            .collect()
    }

    /// Bottleneck machine `μ* = argmax_μ y_μ` (1-based).
    ///
    /// Ties go to the lowest index.
    pub fn bottleneck(&self) -> usize {
        let totals = self.row_totals();
        let mut best = 1;
        for (mu, &y) in totals.iter().enumerate() {
            if y > totals[best - 1] {
                best = mu + 1;
            }
        }
        best
    }

    /// The table with both machine order and job order reversed.
    ///
    /// Running the reversed system is the mirror image of running the
    /// original one, so its fiducial sweep is the reverse of the original
    /// sweep.
    pub fn reversed(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for mu in (1..=self.machines).rev() {
            for i in (1..=self.jobs).rev() {
                entries.push(self.get(mu, i));
            }
        }
        Self { machines: self.machines, jobs: self.jobs, entries }
    }

    /// Returns a copy with job columns permuted: column `i` of the result is
    /// column `order[i-1]` (1-based job indices) of `self`.
    pub fn permute_jobs(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.jobs {
            return Err(Error::DimensionMismatch(format!(
                "permutation has {} entries, expected {}",
                order.len(),
                self.jobs
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for mu in 1..=self.machines {
            for &i in order {
                if i < 1 || i > self.jobs {
                    return Err(Error::IndexOutOfRange { what: "job", index: i, limit: self.jobs });
                }
                entries.push(self.get(mu, i));
            }
        }
        Self::new(self.machines, self.jobs, entries)
    }

    /// A small 7-machine, 8-job integer table used in tests and docs.
    ///
    /// Machine 3 is its bottleneck (row total 26) and its fiducial sweep is
    /// `[48, 49, 50, 55, 48, 48, 48]`.
    pub fn demo() -> Self {
        Self::from_rows(&[
            alloc::vec![2., 5., 4., 1., 3., 1., 2., 4.],
            alloc::vec![2., 3., 2., 4., 3., 4., 2., 5.],
            alloc::vec![3., 5., 4., 1., 5., 1., 3., 4.],
            alloc::vec![4., 5., 1., 1., 3., 1., 2., 1.],
            alloc::vec![1., 2., 4., 2., 5., 1., 4., 1.],
            alloc::vec![5., 2., 3., 1., 4., 1., 5., 2.],
            alloc::vec![1., 1., 1., 4., 1., 4., 4., 1.],
        ])
        .expect("demo table is well formed")
    }
}
