//! Last-passage percolation view of the makespan.
//!
//! Forward scheduling is equivalent to a longest monotone lattice path:
//! the completion time of the bottom-right cell equals the maximum, over
//! down/right paths from the top-left vertex to the bottom-right vertex, of
//! the vertex weights along the path. This module has the `O(R·C)` dynamic
//! program, an exhaustive path-enumeration oracle for small grids, the
//! per-realization decomposition of a fiducial makespan into two such path
//! weights, and a Monte Carlo estimator of the normalized limit.

use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{substream, DistributionSpec};
use crate::error::{Error, Result};
use crate::table::ProcessingTimeTable;

/// Largest `rows + cols` the brute-force oracle will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Vertex weights on an `R×C` grid. Weights may be negative (e.g. centered
/// weights `x - λ`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeWeights {
    rows: usize,
    cols: usize,
    weights: Vec<f64>,
}

impl LatticeWeights {
    pub fn new(rows: usize, cols: usize, weights: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain(alloc::format!(
                "grid must be at least 1x1 (got {rows}x{cols})"
            )));
        }
        if weights.len() != rows * cols {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected {rows}x{cols} = {} weights, got {}",
                rows * cols,
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::Domain(alloc::format!("non-finite weight {w}")));
        }
        Ok(Self { rows, cols, weights })
    }

    /// Uses a block of table rows `lo..=hi` as grid weights.
    pub fn from_table_rows(table: &ProcessingTimeTable, lo: usize, hi: usize) -> Result<Self> {
        if lo < 1 || hi > table.machines() || lo > hi {
            return Err(Error::IndexOutOfRange { what: "machine", index: hi.max(lo), limit: table.machines() });
        }
        let mut weights = Vec::with_capacity((hi - lo + 1) * table.jobs());
        for mu in lo..=hi {
            weights.extend_from_slice(table.row(mu));
        }
        Self::new(hi - lo + 1, table.jobs(), weights)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, r: usize, c: usize) -> f64 {
        self.weights[r * self.cols + c]
    }
}

impl From<&ProcessingTimeTable> for LatticeWeights {
    fn from(table: &ProcessingTimeTable) -> Self {
        LatticeWeights::from_table_rows(table, 1, table.machines()).expect("full table block")
    }
}

/// Maximum vertex-weight sum over monotone (down/right) paths from the
/// top-left to the bottom-right vertex, both endpoints included.
///
/// `T[r][c] = w[r][c] + max(T[r-1][c], T[r][c-1])`, one rolling row.
pub fn lpp(weights: &LatticeWeights) -> f64 {
    let mut row = vec![0.0_f64; weights.cols];
    for r in 0..weights.rows {
        for c in 0..weights.cols {
            let best = match (r, c) {
                (0, 0) => 0.0,
                (0, _) => row[c - 1],
                (_, 0) => row[c],
                _ => row[c].max(row[c - 1]),
            };
            row[c] = weights.get(r, c) + best;
        }
    }
    row[weights.cols - 1]
}

/// Independent oracle for [`lpp`]: enumerates every monotone path.
///
/// Refuses grids with `rows + cols > BRUTE_FORCE_LIMIT`, where the path
/// count `C(rows+cols-2, rows-1)` stops being enumerable.
pub fn lpp_bruteforce(weights: &LatticeWeights) -> Result<f64> {
    if weights.rows + weights.cols > BRUTE_FORCE_LIMIT {
        return Err(Error::GridTooLarge {
            rows: weights.rows,
            cols: weights.cols,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    fn walk(w: &LatticeWeights, r: usize, c: usize, acc: f64, best: &mut f64) {
        let acc = acc + w.get(r, c);
        if r + 1 == w.rows && c + 1 == w.cols {
            if acc > *best {
                *best = acc;
            }
            return;
        }
        if r + 1 < w.rows {
            walk(w, r + 1, c, acc, best);
        }
        if c + 1 < w.cols {
            walk(w, r, c + 1, acc, best);
        }
    }

    let mut best = f64::NEG_INFINITY;
    walk(weights, 0, 0, 0.0, &mut best);
    Ok(best)
}

/// Splits the fiducial makespan into two longest-path weights.
///
/// Returns `(upper, lower, fiducial_sum)` where `upper` is the longest path
/// over rows `ν..=M`, `lower` over rows `1..=ν` (both blocks include row
/// `ν`), and `fiducial_sum = Σ_i x_{ν,i}`. The identity
/// `upper + lower - fiducial_sum = makespan(ν)` holds per realization —
/// exactly so on integer-valued tables. The blocks are computed by [`lpp`]
/// on sub-tables, not read off the schedule, so this is an independent
/// check of the scheduling engine.
pub fn decompose_makespan(table: &ProcessingTimeTable, nu: usize) -> Result<(f64, f64, f64)> {
    let m = table.machines();
    if nu < 1 || nu > m {
        return Err(Error::IndexOutOfRange { what: "fiducial machine", index: nu, limit: m });
    }
    let upper = lpp(&LatticeWeights::from_table_rows(table, nu, m)?);
    let lower = lpp(&LatticeWeights::from_table_rows(table, 1, nu)?);
    let fiducial_sum = table.row(nu).iter().sum();
    Ok((upper, lower, fiducial_sum))
}

/// Monte Carlo estimate of the normalized last-passage time
/// `T_{⌊n·v1⌋, ⌊n·v2⌋} / n`, which converges to the shape function
/// `g(v1, v2)` as `n` grows.
///
/// Returns `(mean, standard error)` over `trials` independent grids drawn
/// from `spec` with per-trial substreams of `seed`, so the result does not
/// depend on evaluation order.
pub fn empirical_shape(
    spec: &DistributionSpec,
    v1: f64,
    v2: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if !(v1 >= 0.0 && v2 >= 0.0) || !v1.is_finite() || !v2.is_finite() {
        return Err(Error::Domain(alloc::format!("v1, v2 must be finite and >= 0 (got {v1}, {v2})")));
    }
    if n == 0 || trials == 0 {
        return Err(Error::Domain(alloc::format!("n and trials must be >= 1 (got n={n}, trials={trials})")));
    }
    // T_{m,n} lives on an (m+1)x(n+1) grid of vertices.
    let rows = (n as f64 * v1) as usize + 1;
    let cols = (n as f64 * v2) as usize + 1;

    let mut mean = 0.0;
    let mut m2 = 0.0;
    for t in 0..trials {
        let mut rng = substream(seed, t as u64);
        let mut weights = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            weights.push(spec.sample(&mut rng));
        }
        let value = lpp(&LatticeWeights::new(rows, cols, weights)?) / n as f64;
        let count = (t + 1) as f64;
        let delta = value - mean;
        mean += delta / count;
        m2 += delta * (value - mean);
    }
    let stderr = if trials > 1 {
        libm::sqrt(m2 / (trials as f64 - 1.0) / trials as f64)
    } else {
        0.0
    };
    Ok((mean, stderr))
}
