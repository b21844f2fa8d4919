//! Densities of the symmetric `2β`-stable laws with characteristic function
//! `e^{−|ξ|^{2β}}`.
//!
//! `p(x) = (1/π)∫₀^∞ e^{−ξ^{2β}} cos(ξx) dξ`. For `|x| > 0` the integrand
//! oscillates and, for small `β`, decays slowly, so the integral is taken
//! along the ray `ξ = r·e^{iθ}` with `θ = min(π/(8β), π/4)`, where both
//! factors decay exponentially; `cos(2βθ) > 0` keeps the rotation legal.

use std::f64::consts::{FRAC_PI_4, PI};

use fracgalerkin::special::gamma;

/// Target accuracy of each panel integral.
const PANEL_TOLERANCE: f64 = 1e-15;
/// Integration stops once `envelope(r)·max(r, 1)` falls below this.
const TAIL_CUTOFF: f64 = 1e-17;
/// Two-sided tail mass targeted by [`default_xmax`].
const TAIL_MASS: f64 = 2.5e-4;
const MAX_PANELS: usize = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DensityError {
    #[error("beta = {0} outside (0, 1]")]
    Beta(f64),
    #[error("x = {0} is not finite")]
    Point(f64),
    #[error("quadrature did not reach the tail cutoff at x = {x} (last radius {radius:e})")]
    NonConvergence { x: f64, radius: f64 },
}

fn check_beta(beta: f64) -> Result<(), DensityError> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(DensityError::Beta(beta))
    }
}

/// Density at a single point.
pub fn stable_density_at(beta: f64, x: f64) -> Result<f64, DensityError> {
    check_beta(beta)?;
    if !x.is_finite() {
        return Err(DensityError::Point(x));
    }
    let x = x.abs();
    let theta = (PI / (8.0 * beta)).min(FRAC_PI_4);
    let (c, s) = (theta.cos(), theta.sin());
    let p = 2.0 * beta;
    let (cp, sp) = ((p * theta).cos(), (p * theta).sin());
    // Re[e^{iθ} exp(i·x·r·e^{iθ} − r^{2β}·e^{i2βθ})]
    let integrand = |r: f64| {
        let rp = r.powf(p);
        let re = -x * r * s - rp * cp;
        let im = x * r * c - rp * sp;
        re.exp() * (theta + im).cos()
    };
    let envelope = |r: f64| (-x * r * s - r.powf(p) * cp).exp();

    let mut total = 0.0;
    let (mut a, mut b) = (0.0, 1.0);
    for _ in 0..MAX_PANELS {
        total += quadrature::integrate(integrand, a, b, PANEL_TOLERANCE).integral;
        if envelope(b) * b.max(1.0) < TAIL_CUTOFF {
            return Ok(total / PI);
        }
        a = b;
        b *= 2.0;
    }
    Err(DensityError::NonConvergence { x, radius: b })
}

/// Densities at every point of `xs`.
pub fn stable_density(beta: f64, xs: &[f64]) -> Result<Vec<f64>, DensityError> {
    xs.iter().map(|&x| stable_density_at(beta, x)).collect()
}

/// `n` equally spaced points on `[−xmax, xmax]`.
pub fn symmetric_grid(xmax: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|j| -xmax + 2.0 * xmax * j as f64 / (n - 1) as f64).collect(),
    }
}

/// Half-width outside of which the two-sided tail mass
/// `2Γ(2β)sin(πβ)/(π X^{2β})` is about `2.5e-4`, never below 40.
pub fn default_xmax(beta: f64) -> f64 {
    if beta >= 1.0 {
        return 40.0;
    }
    let c = 2.0 * gamma(2.0 * beta) * (PI * beta).sin() / PI;
    (c / TAIL_MASS).powf(1.0 / (2.0 * beta)).max(40.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert!((stable_density_at(1.0, 0.0).unwrap() - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-13);
        assert!((stable_density_at(0.5, 0.0).unwrap() - 1.0 / PI).abs() < 1e-13);
        // p(0) = Γ(1 + 1/(2β))/π
        let b = 0.3;
        assert!((stable_density_at(b, 0.0).unwrap() - gamma(1.0 + 1.0 / (2.0 * b)) / PI).abs() < 1e-12);
    }

    #[test]
    fn symmetric() {
        for &b in &[0.35, 0.8] {
            assert_eq!(stable_density_at(b, -2.5).unwrap(), stable_density_at(b, 2.5).unwrap());
        }
    }

    #[test]
    fn rejects_bad_beta() {
        assert!(matches!(stable_density_at(1.5, 0.0), Err(DensityError::Beta(_))));
        assert!(matches!(stable_density_at(0.0, 0.0), Err(DensityError::Beta(_))));
    }

    #[test]
    fn grid_is_symmetric() {
        let g = symmetric_grid(2.0, 5);
        assert_eq!(g, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn cauchy_window_grows_with_tail() {
        assert!(default_xmax(0.5) > 2000.0);
        assert_eq!(default_xmax(1.0), 40.0);
    }
}
