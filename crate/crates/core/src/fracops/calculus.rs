//! Riemann–Liouville integral and Caputo derivative on a uniform grid.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::grid::TimeGrid;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::special::gamma;

fn check_alpha<T: Real>(alpha: T, closed_right: bool) -> Result<()> {
    let ok = alpha > T::zero() && if closed_right { alpha <= T::one() } else { alpha < T::one() };
    if ok {
        Ok(())
    } else if closed_right {
        Err(domain("alpha", alpha, "0 < alpha ≤ 1"))
    } else {
        Err(domain("alpha", alpha, "0 < alpha < 1"))
    }
}

fn check_len(got: usize, grid_steps: usize) -> Result<()> {
    if got != grid_steps + 1 {
        return Err(Error::SampleCount { expected: grid_steps + 1, got });
    }
    Ok(())
}

/// Product-trapezoid weights of `Iᵅ` at node `n`: entry `j` multiplies `φ_j`.
/// The kernel `(t−τ)^{α−1}` is integrated exactly against the piecewise
/// linear interpolant, so the weights include the `h^α/Γ(α+2)` factor.
pub fn integral_weights<T: Real>(alpha: T, n: usize, dt: T) -> Vec<T> {
    if n == 0 {
        return vec![T::zero()];
    }
    let a1 = alpha + T::one();
    let p = |x: usize| T::from_usize_lossy(x).powf(a1);
    let scale = dt.powf(alpha) / gamma(alpha + T::lit(2.0));
    let nt = T::from_usize_lossy(n);
    let mut w = Vec::with_capacity(n + 1);
    w.push(scale * (p(n - 1) - (nt - T::one() - alpha) * nt.powf(alpha)));
    for j in 1..n {
        let l = n - j;
        w.push(scale * (p(l + 1) - T::lit(2.0) * p(l) + p(l - 1)));
    }
    w.push(scale);
    w
}

/// `Iᵅφ(t_n) = Γ(α)⁻¹ ∫₀^{t_n} (t_n − τ)^{α−1} φ(τ) dτ` at every grid node,
/// for `φ` linear between nodes. Second order for smooth `φ`.
pub fn frac_integral<T, V>(alpha: T, samples: &[V], grid: &TimeGrid<T>) -> Result<Vec<V>>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
{
    check_alpha(alpha, true)?;
    check_len(samples.len(), grid.steps())?;
    let dt = grid.dt();
    Ok((0..samples.len())
        .map(|n| integral_weights(alpha, n, dt).into_iter().zip(samples).fold(V::zero(), |acc, (w, &v)| acc + v * w))
        .collect())
}

/// L1 approximation of the Caputo derivative `Dᵅφ` at `t_1, …, t_n`.
/// Exact for piecewise linear `φ`; `φ(0)` is the sample at `t_0`.
pub fn caputo_l1<T, V>(alpha: T, samples: &[V], grid: &TimeGrid<T>) -> Result<Vec<V>>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    check_alpha(alpha, false)?;
    check_len(samples.len(), grid.steps())?;
    let one_m = T::one() - alpha;
    let scale = grid.dt().powf(-alpha) / gamma(T::lit(2.0) - alpha);
    let n = grid.steps();
    let b: Vec<T> =
        (0..n).map(|j| T::from_usize_lossy(j + 1).powf(one_m) - T::from_usize_lossy(j).powf(one_m)).collect();
    let diffs: Vec<V> = samples.windows(2).map(|w| w[1] - w[0]).collect();
    Ok((1..=n)
        .map(|k| {
            let acc = (0..k).fold(V::zero(), |acc, j| acc + diffs[k - 1 - j] * b[j]);
            acc * scale
        })
        .collect())
}

/// Composite trapezoid rule of uniformly spaced samples.
pub fn trapezoid<T: Real>(samples: &[T], dt: T) -> T {
    match samples.len() {
        0 | 1 => T::zero(),
        n => {
            let inner = samples[1..n - 1].iter().fold(T::zero(), |acc, &v| acc + v);
            dt * (inner + (samples[0] + samples[n - 1]) / T::lit(2.0))
        }
    }
}

/// Running trapezoid integrals `∫₀^{t_j} g` at every node.
pub fn cumulative_trapezoid<T: Real>(samples: &[T], dt: T) -> Vec<T> {
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = T::zero();
    for (j, &v) in samples.iter().enumerate() {
        if j > 0 {
            acc += dt * (samples[j - 1] + v) / T::lit(2.0);
        }
        out.push(acc);
    }
    out
}
