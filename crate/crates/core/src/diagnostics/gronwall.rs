use crate::error::{Error, Result};
use crate::fracops::{frac_integral, ml_real, TimeGrid};
use crate::scalar::Real;

/// `max_j φ(t_j) − (Iᵅζ(t_j) + φ(0))·E_α(c·t_jᵅ)`.
///
/// A non-positive result means the fractional Grönwall bound holds on the
/// grid. `ζ` must be non-negative and non-decreasing.
pub fn gronwall_audit<T: Real>(phi: &[T], c: T, zeta: &[T], alpha: T, grid: &TimeGrid<T>) -> Result<T> {
    if phi.len() != zeta.len() {
        return Err(Error::LengthMismatch { left: phi.len(), right: zeta.len() });
    }
    for (index, &z) in zeta.iter().enumerate() {
        if !(z >= T::zero()) {
            return Err(Error::Negative { index, value: z.to_f64_lossy() });
        }
        if index > 0 && z < zeta[index - 1] {
            return Err(Error::NotMonotone { index });
        }
    }
    let integral = frac_integral(alpha, zeta, grid)?;
    let phi0 = phi[0];
    let mut worst = -T::one() / T::zero();
    for (j, (&p, &iz)) in phi.iter().zip(&integral).enumerate() {
        let bound = (iz + phi0) * ml_real(alpha, T::one(), c * grid.t(j).powf(alpha))?;
        worst = worst.max(p - bound);
    }
    Ok(worst)
}

/// Running maximum, the smallest non-decreasing majorant of `series`.
pub fn running_max<T: Real>(series: &[T]) -> Vec<T> {
    let mut acc = -T::one() / T::zero();
    series
        .iter()
        .map(|&v| {
            acc = acc.max(v);
            acc
        })
        .collect()
}
