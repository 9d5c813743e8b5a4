//! Least-squares fit of the two-shape-function makespan curve.
//!
//! Mean makespan as a function of the fiducial index `ν` is modeled as
//! `A(ν-1)^α + A(M-ν)^α + B`: a power-law shape function from each end of
//! the machine line plus an offset. The model is linear in `(A, B)` for a
//! fixed exponent, so the fit profiles out the linear pair with a 2×2
//! least-squares solve per candidate `α` and searches `α` by a coarse grid
//! followed by golden-section refinement. Deterministic, no starting point.

use crate::error::{Error, Result};
use crate::sweep::SweepResult;

/// Exponent search interval; covers the empirically observed range with
/// margin on both sides.
pub const ALPHA_RANGE: (f64, f64) = (0.2, 0.9);

const GRID_STEPS: usize = 70;
const GOLDEN_TOL: f64 = 1e-10;

/// Fitted parameters of the makespan curve with residual diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitResult {
    /// Amplitude `A` shared by both power-law terms.
    pub amplitude: f64,
    /// Offset `B`.
    pub offset: f64,
    /// Exponent `α`.
    pub alpha: f64,
    /// Root-mean-square residual over the fitted points.
    pub rmse: f64,
    /// The `α` interval that was searched.
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// False when the data cannot pin down `α` (e.g. constant means, where
    /// `A = 0` fits every exponent equally well).
    pub identifiable: bool,
}

/// Fits the makespan curve to the per-fiducial means of a sweep.
pub fn fit_makespan_curve(sweep: &SweepResult) -> Result<FitResult> {
    fit_means(&sweep.means())
}

/// Fits the makespan curve to raw per-fiducial means; `means[ν-1]` is the
/// mean makespan with fiducial machine `ν`, `M = means.len()`.
pub fn fit_means(means: &[f64]) -> Result<FitResult> {
    let m = means.len();
    if m < 3 {
        return Err(Error::Fit(alloc::format!("need at least 3 fiducial points, got {m}")));
    }
    if let Some(y) = means.iter().find(|y| !y.is_finite()) {
        return Err(Error::Fit(alloc::format!("non-finite mean {y}")));
    }

    let n = m as f64;
    let y_mean = means.iter().sum::<f64>() / n;
    let y_spread = means
        .iter()
        .map(|y| (y - y_mean).abs())
        .fold(0.0_f64, f64::max);

    // Constant data: A = 0, B = mean, any exponent fits.
    if y_spread <= 1e-12 * (1.0 + y_mean.abs()) {
        return Ok(FitResult {
            amplitude: 0.0,
            offset: y_mean,
            alpha: ALPHA_RANGE.0,
            rmse: rmse(means, 0.0, y_mean, ALPHA_RANGE.0),
            alpha_lo: ALPHA_RANGE.0,
            alpha_hi: ALPHA_RANGE.1,
            identifiable: false,
        });
    }

    let (lo, hi) = ALPHA_RANGE;
    let step = (hi - lo) / GRID_STEPS as f64;
    let mut best_alpha = lo;
    let mut best_sse = f64::INFINITY;
    for k in 0..=GRID_STEPS {
        let alpha = lo + step * k as f64;
        let sse = profile_sse(means, alpha)?.2;
        if sse < best_sse {
            best_sse = sse;
            best_alpha = alpha;
        }
    }

    // Golden-section refinement around the best grid point.
    let mut a = (best_alpha - step).max(lo);
    let mut b = (best_alpha + step).min(hi);
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = profile_sse(means, x1)?.2;
    let mut f2 = profile_sse(means, x2)?.2;
    while b - a > GOLDEN_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = profile_sse(means, x1)?.2;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = profile_sse(means, x2)?.2;
        }
    }
    let refined = 0.5 * (a + b);
    let (alpha, (amp, off, sse)) = {
        let refined_fit = profile_sse(means, refined)?;
        if refined_fit.2 <= best_sse {
            (refined, refined_fit)
        } else {
            (best_alpha, profile_sse(means, best_alpha)?)
        }
    };

    Ok(FitResult {
        amplitude: amp,
        offset: off,
        alpha,
        rmse: libm::sqrt(sse / n),
        alpha_lo: lo,
        alpha_hi: hi,
        identifiable: true,
    })
}

/// Basis value `(ν-1)^α + (M-ν)^α` for 1-based `ν`.
fn basis(nu: usize, m: usize, alpha: f64) -> f64 {
    libm::pow((nu - 1) as f64, alpha) + libm::pow((m - nu) as f64, alpha)
}

/// Solves the linear pair `(A, B)` for a fixed exponent and returns
/// `(A, B, sse)`.
fn profile_sse(means: &[f64], alpha: f64) -> Result<(f64, f64, f64)> {
    let m = means.len();
    let n = m as f64;
    let mut su = 0.0;
    let mut suu = 0.0;
    let mut sy = 0.0;
    let mut suy = 0.0;
    for (idx, &y) in means.iter().enumerate() {
        let u = basis(idx + 1, m, alpha);
        su += u;
        suu += u * u;
        sy += y;
        suy += u * y;
    }
    let det = suu * n - su * su;
    if det.abs() <= 1e-12 * (1.0 + suu * n) {
        return Err(Error::Fit(alloc::format!("degenerate design matrix at alpha = {alpha}")));
    }
    let amp = (suy * n - su * sy) / det;
    let off = (suu * sy - su * suy) / det;
    let mut sse = 0.0;
    for (idx, &y) in means.iter().enumerate() {
        let r = y - (amp * basis(idx + 1, m, alpha) + off);
        sse += r * r;
    }
    Ok((amp, off, sse))
}

fn rmse(means: &[f64], amp: f64, off: f64, alpha: f64) -> f64 {
    let m = means.len();
    let sse: f64 = means
        .iter()
        .enumerate()
        .map(|(idx, &y)| {
            let r = y - (amp * basis(idx + 1, m, alpha) + off);
            r * r
        })
        .sum();
    libm::sqrt(sse / m as f64)
}

/// Evaluates the fitted curve `A(ν-1)^α + A(M-ν)^α + B` at fiducial `ν`.
pub fn eval_fit(fit: &FitResult, nu: usize, machines: usize) -> Result<f64> {
    if nu < 1 || nu > machines {
        return Err(Error::IndexOutOfRange { what: "fiducial machine", index: nu, limit: machines });
    }
    Ok(fit.amplitude * basis(nu, machines, fit.alpha) + fit.offset)
}
