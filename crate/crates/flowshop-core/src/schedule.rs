//! Fiducial-machine scheduling.
//!
//! Given a processing time table and a fiducial machine `ν`, the fiducial
//! row runs contiguously from time 0. Machines after `ν` are scheduled
//! forward (`s_{μ,i} = max(t_{μ,i-1}, t_{μ-1,i})`), machines before `ν`
//! backward (`t_{μ,i} = min(s_{μ,i+1}, s_{μ+1,i})`). Backward scheduling can
//! push earlier machines before time 0; [`Schedule::normalize`] shifts the
//! whole schedule so the earliest start is 0 without changing the makespan.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::table::ProcessingTimeTable;

/// Start/end times `s_{μ,i}`, `t_{μ,i}` for every machine and job, for one
/// choice of fiducial machine.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Schedule {
    fiducial: usize,
    machines: usize,
    jobs: usize,
    starts: Vec<f64>,
    ends: Vec<f64>,
}

impl Schedule {
    fn idx(&self, mu: usize, i: usize) -> usize {
        assert!(mu >= 1 && mu <= self.machines, "machine index {mu} out of range");
        assert!(i >= 1 && i <= self.jobs, "job index {i} out of range");
        (mu - 1) * self.jobs + (i - 1)
    }

    /// Fiducial machine index `ν` (1-based).
    pub fn fiducial(&self) -> usize {
        self.fiducial
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Start time `s_{μ,i}` (1-based indices; may be negative).
    pub fn start(&self, mu: usize, i: usize) -> f64 {
        self.starts[self.idx(mu, i)]
    }

    /// End time `t_{μ,i}` (1-based indices).
    pub fn end(&self, mu: usize, i: usize) -> f64 {
        self.ends[self.idx(mu, i)]
    }

    /// Makespan `t_{M,N} - s_{1,1}`.
    pub fn makespan(&self) -> f64 {
        self.end(self.machines, self.jobs) - self.start(1, 1)
    }

    /// Shifts all times so the earliest start is 0. Idempotent; the makespan
    /// is unchanged because every time moves by the same amount.
    pub fn normalize(&self) -> Schedule {
        let min = self.starts.iter().copied().fold(f64::INFINITY, f64::min);
        let mut out = self.clone();
        for s in &mut out.starts {
            *s -= min;
        }
        for t in &mut out.ends {
            *t -= min;
        }
        out
    }

    /// Test-support constructor for hand-built (possibly infeasible)
    /// schedules; `starts`/`ends` are row-major.
    pub fn from_raw(
        fiducial: usize,
        machines: usize,
        jobs: usize,
        starts: Vec<f64>,
        ends: Vec<f64>,
    ) -> Result<Self> {
        if starts.len() != machines * jobs || ends.len() != machines * jobs {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected {machines}x{jobs} start/end matrices"
            )));
        }
        if fiducial < 1 || fiducial > machines {
            return Err(Error::IndexOutOfRange { what: "fiducial machine", index: fiducial, limit: machines });
        }
        Ok(Self { fiducial, machines, jobs, starts, ends })
    }
}

/// Schedules `table` with machine `nu` (1-based) as fiducial.
///
/// The fiducial row starts at time 0 and runs without idle; rows after it
/// are scheduled forward, rows before it backward. The result is always
/// feasible ([`validate`] returns no violations).
pub fn schedule_fiducial(table: &ProcessingTimeTable, nu: usize) -> Result<Schedule> {
    let m = table.machines();
    let n = table.jobs();
    if nu < 1 || nu > m {
        return Err(Error::IndexOutOfRange { what: "fiducial machine", index: nu, limit: m });
    }

    let mut sch = Schedule {
        fiducial: nu,
        machines: m,
        jobs: n,
        starts: vec![0.0; m * n],
        ends: vec![0.0; m * n],
    };

    // Fiducial row: contiguous from time 0.
    let mut clock = 0.0;
    for i in 1..=n {
        let k = (nu - 1) * n + (i - 1);
        sch.starts[k] = clock;
        clock += table.get(nu, i);
        sch.ends[k] = clock;
    }

    // Forward: row μ waits for its own previous job and for row μ-1.
    for mu in nu + 1..=m {
        for i in 1..=n {
            let left = if i > 1 { sch.end(mu, i - 1) } else { f64::NEG_INFINITY };
            let above = sch.end(mu - 1, i);
            let s = left.max(above);
            let k = (mu - 1) * n + (i - 1);
            sch.starts[k] = s;
            sch.ends[k] = s + table.get(mu, i);
        }
    }

    // Backward: row μ must finish before its own next job and before row μ+1.
    for mu in (1..nu).rev() {
        for i in (1..=n).rev() {
            let right = if i < n { sch.start(mu, i + 1) } else { f64::INFINITY };
            let below = sch.start(mu + 1, i);
            let t = right.min(below);
            let k = (mu - 1) * n + (i - 1);
            sch.ends[k] = t;
            sch.starts[k] = t - table.get(mu, i);
        }
    }

    Ok(sch)
}

/// Makespan for every choice of fiducial machine: element `ν-1` is the
/// makespan with machine `ν` as fiducial.
pub fn sweep_fiducial(table: &ProcessingTimeTable) -> Vec<f64> {
    (1..=table.machines())
        .map(|nu| {
            schedule_fiducial(table, nu)
                .expect("nu in range")
                .makespan()
        })
        .collect()
}

/// A broken schedule invariant at a specific cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `t_{μ,i} ≠ s_{μ,i} + x_{μ,i}`.
    DurationMismatch { machine: usize, job: usize },
    /// `t_{μ,i} > s_{μ,i+1}`: jobs overlap on one machine.
    MachineOverlap { machine: usize, job: usize },
    /// `t_{μ,i} > s_{μ+1,i}`: a job starts downstream before it finished upstream.
    PrecedenceViolated { machine: usize, job: usize },
    /// Fiducial row is not contiguous from time 0.
    FiducialGap { machine: usize, job: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DurationMismatch { machine, job } => {
                write!(f, "duration mismatch at machine {machine}, job {job}")
            }
            Violation::MachineOverlap { machine, job } => {
                write!(f, "overlap on machine {machine} between jobs {job} and {}", job + 1)
            }
            Violation::PrecedenceViolated { machine, job } => {
                write!(f, "job {job} starts on machine {} before finishing on machine {machine}", machine + 1)
            }
            Violation::FiducialGap { machine, job } => {
                write!(f, "fiducial machine {machine} idle before job {job}")
            }
        }
    }
}

/// Checks every schedule invariant against `table` and reports each broken
/// one with its location. An empty list means the schedule is feasible.
pub fn validate(schedule: &Schedule, table: &ProcessingTimeTable) -> Result<Vec<Violation>> {
    let m = table.machines();
    let n = table.jobs();
    if schedule.machines != m || schedule.jobs != n {
        return Err(Error::DimensionMismatch(alloc::format!(
            "schedule is {}x{}, table is {m}x{n}",
            schedule.machines, schedule.jobs
        )));
    }

    // Relative tolerance: backward scheduling computes s = t - x, so
    // checking t = s + x in floating point can be off by an ulp on
    // non-integer tables. Integer tables stay exact (the slack is zero).
    let scale = schedule
        .ends
        .iter()
        .chain(&schedule.starts)
        .fold(0.0_f64, |a, &b| a.max(b.abs()));
    let tol = 1e-9 * (1.0 + scale);

    let mut out = Vec::new();
    let nu = schedule.fiducial;
    for mu in 1..=m {
        for i in 1..=n {
            let slack = schedule.end(mu, i) - (schedule.start(mu, i) + table.get(mu, i));
            if slack.abs() > tol {
                out.push(Violation::DurationMismatch { machine: mu, job: i });
            }
            if i < n && schedule.end(mu, i) > schedule.start(mu, i + 1) + tol {
                out.push(Violation::MachineOverlap { machine: mu, job: i });
            }
            if mu < m && schedule.end(mu, i) > schedule.start(mu + 1, i) + tol {
                out.push(Violation::PrecedenceViolated { machine: mu, job: i });
            }
        }
    }
    // Fiducial contiguity: s_{ν,1} = 0 and s_{ν,i+1} = t_{ν,i}.
    if schedule.start(nu, 1).abs() > tol {
        out.push(Violation::FiducialGap { machine: nu, job: 1 });
    }
    for i in 1..n {
        if (schedule.start(nu, i + 1) - schedule.end(nu, i)).abs() > tol {
            out.push(Violation::FiducialGap { machine: nu, job: i + 1 });
        }
    }
    Ok(out)
}
