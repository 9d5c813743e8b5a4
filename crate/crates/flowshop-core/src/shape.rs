//! Closed-form shape functions and the asymptotic makespan.
//!
//! For exponential or geometric processing times the shape function is
//! known in closed form: `g(ξ, 1) = λ(1 + ξ) + 2σ√ξ`, with the centered
//! version `g̃(ξ, 1) = 2σ√ξ`. Under the scalings `M ≈ κN` and `ν ≈ τM` the
//! normalized makespan `T(ν)/N` converges to
//! `h_κ(τ) = g(κ(1-τ), 1) + g(κτ, 1) - λ`, a concave function of `τ`
//! maximal at the midpoint and minimal at the endpoints.

use crate::error::{Error, Result};

/// Mean/stddev of an exponential or geometric weight distribution, the two
/// families with a known closed-form shape function.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum ShapeParams {
    /// Exponential with scale `λ`; `σ = λ`.
    Exponential { lambda: f64 },
    /// Geometric `P(X = n) = (1 - q) qⁿ`; `λ = q/(1-q)`, `σ = √q/(1-q)`.
    Geometric { q: f64 },
}

impl ShapeParams {
    pub fn exponential(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(alloc::format!("exponential scale must be > 0 (got {lambda})")));
        }
        Ok(ShapeParams::Exponential { lambda })
    }

    pub fn geometric(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(alloc::format!("geometric needs 0 < q < 1 (got {q})")));
        }
        Ok(ShapeParams::Geometric { q })
    }

    /// Mean `λ` of one weight.
    pub fn mean(&self) -> f64 {
        match *self {
            ShapeParams::Exponential { lambda } => lambda,
            ShapeParams::Geometric { q } => q / (1.0 - q),
        }
    }

    /// Standard deviation `σ` of one weight.
    pub fn stddev(&self) -> f64 {
        match *self {
            ShapeParams::Exponential { lambda } => lambda,
            ShapeParams::Geometric { q } => libm::sqrt(q) / (1.0 - q),
        }
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(Error::Domain(alloc::format!("xi must be finite and >= 0 (got {xi})")));
    }
    Ok(())
}

/// Closed-form shape function `g(ξ, 1) = λ(1 + ξ) + 2σ√ξ`.
pub fn shape_closed_form(params: &ShapeParams, xi: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(params.mean() * (1.0 + xi) + 2.0 * params.stddev() * libm::sqrt(xi))
}

/// Centered shape function `g̃(ξ, 1) = g(ξ, 1) - λ(1 + ξ) = 2σ√ξ`.
pub fn shape_tilde(params: &ShapeParams, xi: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(2.0 * params.stddev() * libm::sqrt(xi))
}

/// The geometric shape function in its product form
/// `(1 + √(qξ))²/(1-q) - 1`, algebraically equal to
/// [`shape_closed_form`] with geometric parameters. Kept as a separate
/// route for cross-checking.
pub fn geometric_shape_product_form(q: f64, xi: f64) -> Result<f64> {
    ShapeParams::geometric(q)?;
    check_xi(xi)?;
    let s = 1.0 + libm::sqrt(q * xi);
    Ok(s * s / (1.0 - q) - 1.0)
}

/// Normalized makespan limit `2σ(√(κ(1-τ)) + √(κτ)) + λ(κ + 1)` under the
/// scalings `M ≈ κN`, `ν ≈ τM`.
pub fn asymptotic_makespan(kappa: f64, tau: f64, params: &ShapeParams) -> Result<f64> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(alloc::format!("kappa must be finite and >= 0 (got {kappa})")));
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(alloc::format!("tau must be in [0, 1] (got {tau})")));
    }
    let sigma = params.stddev();
    let lambda = params.mean();
    Ok(2.0 * sigma * (libm::sqrt(kappa * (1.0 - tau)) + libm::sqrt(kappa * tau)) + lambda * (kappa + 1.0))
}

/// `h_κ(τ) = g(κ(1-τ), 1) + g(κτ, 1) - λ`, the normalized makespan as a
/// function of the relative fiducial position. Equals
/// [`asymptotic_makespan`] for exponential/geometric parameters.
pub fn h_kappa(tau: f64, kappa: f64, params: &ShapeParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(alloc::format!("tau must be in [0, 1] (got {tau})")));
    }
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::Domain(alloc::format!("kappa must be finite and >= 0 (got {kappa})")));
    }
    Ok(shape_closed_form(params, kappa * (1.0 - tau))?
        + shape_closed_form(params, kappa * tau)?
        - params.mean())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn exponential_unit_at_one() {
        let p = ShapeParams::exponential(1.0).unwrap();
        // (1 + √ξ)² at ξ = 1.
        assert!((shape_closed_form(&p, 1.0).unwrap() - 4.0).abs() < TOL);
    }

    #[test]
    fn shape_at_zero_is_mean() {
        for p in [ShapeParams::exponential(2.0).unwrap(), ShapeParams::geometric(0.3).unwrap()] {
            assert!((shape_closed_form(&p, 0.0).unwrap() - p.mean()).abs() < TOL);
            assert_eq!(shape_tilde(&p, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn geometric_product_form_value() {
        let g = geometric_shape_product_form(0.5, 1.0).unwrap();
        let expected = {
            let s = 1.0 + libm::sqrt(0.5);
            s * s / 0.5 - 1.0
        };
        assert!((g - expected).abs() < TOL);
        assert!((g - 4.828427).abs() < 1e-6);
    }

    #[test]
    fn geometric_routes_agree() {
        let p = ShapeParams::geometric(0.37).unwrap();
        for xi in [0.0, 0.1, 0.5, 1.0, 2.0, 10.0] {
            let a = shape_closed_form(&p, xi).unwrap();
            let b = geometric_shape_product_form(0.37, xi).unwrap();
            assert!((a - b).abs() <= TOL * (1.0 + a.abs()), "xi = {xi}: {a} vs {b}");
        }
    }

    #[test]
    fn tilde_values() {
        let p2 = ShapeParams::exponential(2.0).unwrap();
        assert!((shape_tilde(&p2, 1.0).unwrap() - 4.0).abs() < TOL);
        let p1 = ShapeParams::exponential(1.0).unwrap();
        assert!((shape_tilde(&p1, 4.0).unwrap() - 4.0).abs() < TOL);
    }

    #[test]
    fn tilde_is_centered_closed_form() {
        let p = ShapeParams::exponential(2.5).unwrap();
        for xi in [0.0, 0.2, 1.0, 3.0] {
            let centered = shape_closed_form(&p, xi).unwrap() - p.mean() * (1.0 + xi);
            assert!((shape_tilde(&p, xi).unwrap() - centered).abs() < TOL);
        }
    }

    #[test]
    fn asymptote_values() {
        let p = ShapeParams::exponential(2.0).unwrap();
        let v = asymptotic_makespan(1.0, 0.5, &p).unwrap();
        assert!((v - (4.0 * libm::sqrt(2.0) + 4.0)).abs() < TOL);
        assert!((v - 9.656854).abs() < 1e-6);
        // κ = 0: the fiducial row alone.
        assert!((asymptotic_makespan(0.0, 0.3, &p).unwrap() - 2.0).abs() < TOL);
    }

    #[test]
    fn asymptote_symmetric_in_tau() {
        let p = ShapeParams::geometric(0.6).unwrap();
        for tau in [0.0, 0.2, 0.4] {
            let a = asymptotic_makespan(1.7, tau, &p).unwrap();
            let b = asymptotic_makespan(1.7, 1.0 - tau, &p).unwrap();
            assert!((a - b).abs() < TOL);
        }
    }

    #[test]
    fn h_kappa_matches_asymptote() {
        let p = ShapeParams::exponential(2.0).unwrap();
        for (kappa, tau) in [(0.5, 0.1), (1.0, 0.5), (2.0, 0.9)] {
            let a = h_kappa(tau, kappa, &p).unwrap();
            let b = asymptotic_makespan(kappa, tau, &p).unwrap();
            assert!((a - b).abs() < TOL * (1.0 + a.abs()));
        }
    }

    #[test]
    fn h_kappa_endpoint_symmetry_and_midpoint_gain() {
        let p = ShapeParams::exponential(2.0).unwrap();
        let h0 = h_kappa(0.0, 1.0, &p).unwrap();
        let h1 = h_kappa(1.0, 1.0, &p).unwrap();
        assert!((h0 - h1).abs() < TOL);
        let gain = h_kappa(0.5, 1.0, &p).unwrap() - h0;
        assert!((gain - (4.0 * libm::sqrt(2.0) - 4.0)).abs() < TOL);
        // κ = 0 is flat.
        assert!((h_kappa(0.7, 0.0, &p).unwrap() - p.mean()).abs() < TOL);
    }

    #[test]
    fn domain_errors() {
        let p = ShapeParams::exponential(1.0).unwrap();
        assert!(shape_closed_form(&p, -0.1).is_err());
        assert!(shape_tilde(&p, f64::NAN).is_err());
        assert!(asymptotic_makespan(-1.0, 0.5, &p).is_err());
        assert!(asymptotic_makespan(1.0, 1.5, &p).is_err());
        assert!(h_kappa(-0.1, 1.0, &p).is_err());
        assert!(ShapeParams::geometric(0.0).is_err());
        assert!(ShapeParams::exponential(-2.0).is_err());
    }

    // Shape-function properties on the closed forms: homogeneity in the
    // diagonal argument, superadditivity, monotone concavity of the
    // centered form.
    #[test]
    fn closed_form_properties() {
        let p = ShapeParams::exponential(1.5).unwrap();
        let lambda = p.mean();
        let sigma = p.stddev();
        // g on general (v1, v2) via homogeneity: g(v1, v2) = v2 g(v1/v2, 1).
        let g = |v1: f64, v2: f64| -> f64 {
            if v2 == 0.0 {
                return v1 * lambda; // P5
            }
            v2 * shape_closed_form(&p, v1 / v2).unwrap()
        };
        // P3: g(αv) = αg(v).
        for alpha in [0.5, 2.0, 3.7] {
            let a = g(alpha * 0.8, alpha * 1.3);
            let b = alpha * g(0.8, 1.3);
            assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
        // P4: superadditivity (a path to v + w can be forced through v, so
        // g(v + w) >= g(v) + g(w)) over a deterministic sample of pairs.
        let pts = [(0.2, 1.0), (1.0, 0.4), (2.5, 2.5), (0.0, 1.0), (3.0, 0.5)];
        for &(v1, v2) in &pts {
            for &(w1, w2) in &pts {
                assert!(g(v1 + w1, v2 + w2) >= g(v1, v2) + g(w1, w2) - 1e-12);
            }
        }
        // P5: g(v, 0) = vλ (and the centered form vanishes there).
        assert!((g(2.0, 0.0) - 2.0 * lambda).abs() < 1e-12);
        // Monotone concavity of g̃ by finite differences on a grid.
        let step = 0.05;
        let mut prev_diff = f64::INFINITY;
        for k in 0..60 {
            let xi = step * k as f64;
            let d = shape_tilde(&p, xi + step).unwrap() - shape_tilde(&p, xi).unwrap();
            assert!(d > 0.0, "strictly increasing at xi = {xi}");
            assert!(d <= prev_diff + 1e-12, "concave at xi = {xi}");
            prev_diff = d;
        }
        let _ = sigma;
    }
}
