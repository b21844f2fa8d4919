//! Closed-form potentials and initial data used by the experiments.
//!
//! Multi-dimensional versions are sums (potentials) or products (initial
//! data) of the one-dimensional profile applied to every coordinate.

use std::f64::consts::{FRAC_PI_2, PI};

use super::problem::Profile;
use crate::scalar::Real;

/// Tilt `b` of the built-in double well `cos 2x + b·sin x`.
pub const DOUBLE_WELL_TILT: f64 = 0.3;

/// Shallow minimum of the built-in double well, `V = b − 1`.
pub const SHALLOW_MINIMUM: f64 = FRAC_PI_2;

/// Deep minimum of the built-in double well, `V = −1 − b`.
pub const DEEP_MINIMUM: f64 = 3.0 * FRAC_PI_2;

fn sum_axes<T: Real>(x: &[T], g: impl Fn(T) -> T) -> T {
    x.iter().fold(T::zero(), |acc, &xi| acc + g(xi))
}

fn product_axes<T: Real>(x: &[T], g: impl Fn(T) -> T) -> T {
    x.iter().fold(T::one(), |acc, &xi| acc * g(xi))
}

/// Distance between `x` and `c` on the circle of length `2π`.
fn circle_distance<T: Real>(x: T, c: T) -> T {
    let r = (x - c).abs() % T::two_pi();
    r.min(T::two_pi() - r)
}

/// `Σᵢ cos xᵢ`.
pub fn cosine<T: Real>() -> Profile<T> {
    Profile::function(|x: &[T]| sum_axes(x, |v| v.cos()))
}

/// `Σᵢ cos 2xᵢ + b·sin xᵢ` with critical points at `π/2` (shallow well),
/// `3π/2` (deep well) and `arcsin(b/4)` (barriers).
pub fn double_well<T: Real>(tilt: T) -> Profile<T> {
    Profile::function(move |x: &[T]| sum_axes(x, |v| (v + v).cos() + tilt * v.sin()))
}

/// `Πᵢ cos(kᵢxᵢ)`.
pub fn mode<T: Real>(k: Vec<i64>) -> Profile<T> {
    Profile::function(move |x: &[T]| {
        x.iter().zip(k.iter().cycle()).fold(T::one(), |acc, (&xi, &ki)| acc * (T::lit(ki as f64) * xi).cos())
    })
}

/// Von Mises profile `Πᵢ exp(κ(cos(xᵢ − c) − 1))`, analytic on the torus.
pub fn von_mises<T: Real>(center: T, kappa: T) -> Profile<T> {
    Profile::function(move |x: &[T]| product_axes(x, |v| (kappa * ((v - center).cos() - T::one())).exp()))
}

/// `C^∞` step: 0 for `s ≤ 0`, 1 for `s ≥ 1`, built from `e^{−1/s}`.
pub fn smooth_step<T: Real>(s: T) -> T {
    let psi = |r: T| if r > T::zero() { (-T::one() / r).exp() } else { T::zero() };
    let a = psi(s);
    let b = psi(T::one() - s);
    if a + b == T::zero() {
        T::zero()
    } else {
        a / (a + b)
    }
}

/// Mollified indicator of the arc `|x − c| < w` on every axis.
///
/// Equal to 1 for distance `≤ w/2`, 0 for distance `≥ 3w/2`, and the
/// [`smooth_step`] transition in between.
pub fn bump<T: Real>(center: T, width: T) -> Profile<T> {
    Profile::function(move |x: &[T]| {
        product_axes(x, |v| {
            let r = circle_distance(v, center);
            smooth_step((T::lit(1.5) * width - r) / width)
        })
    })
}

/// Largest admissible bump half-width, so that the support stays inside
/// one period.
pub fn max_bump_width() -> f64 {
    PI / 1.5
}
