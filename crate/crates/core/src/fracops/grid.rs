use crate::error::{domain, Result};
use crate::scalar::Real;

/// Uniform grid `t_j = jΔt`, `Δt = T/n`, `j = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T: Real> {
    t_final: T,
    steps: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t_final: T, steps: usize) -> Result<Self> {
        if !(t_final > T::zero()) || !t_final.is_finite() {
            return Err(domain("T", t_final, "T > 0"));
        }
        if steps == 0 {
            return Err(domain("n", T::zero(), "n ≥ 1"));
        }
        Ok(Self { t_final, steps })
    }

    /// Grid with step closest to `dt`.
    pub fn with_step(t_final: T, dt: T) -> Result<Self> {
        if !(dt > T::zero()) {
            return Err(domain("dt", dt, "dt > 0"));
        }
        let n = (t_final / dt).round().to_f64_lossy().max(1.0) as usize;
        Self::new(t_final, n)
    }

    #[inline]
    pub fn t_final(&self) -> T {
        self.t_final
    }

    #[inline]
    pub fn steps(&self) -> usize {
        self.steps
    }

    #[inline]
    pub fn dt(&self) -> T {
        self.t_final / T::from_usize_lossy(self.steps)
    }

    /// `t_j`; the last node is exactly `T`.
    #[inline]
    pub fn t(&self, j: usize) -> T {
        if j == self.steps {
            self.t_final
        } else {
            self.dt() * T::from_usize_lossy(j)
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..=self.steps).map(|j| self.t(j)).collect()
    }
}
