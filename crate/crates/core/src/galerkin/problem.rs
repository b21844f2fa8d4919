use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::spectral::{Lattice, SpectralField};

type StaticFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;
type DynamicFn<T> = Arc<dyn Fn(T, &[T]) -> T + Send + Sync>;

/// A real function on 𝕋ᵈ (potential, source or initial datum), possibly
/// time dependent.
#[derive(Clone)]
pub enum Profile<T: Real> {
    Zero,
    /// Closed form `x ↦ g(x)`, projected by trapezoidal quadrature.
    Static(StaticFn<T>),
    /// Closed form `(t, x) ↦ g(t, x)`, projected at every requested time.
    Dynamic(DynamicFn<T>),
    /// Explicit Fourier coefficients, truncated or zero-padded to the target.
    Coefficients(SpectralField<T>),
}

impl<T: Real> fmt::Debug for Profile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("Zero"),
            Self::Static(_) => f.write_str("Static(..)"),
            Self::Dynamic(_) => f.write_str("Dynamic(..)"),
            Self::Coefficients(c) => f.debug_tuple("Coefficients").field(c.lattice()).finish(),
        }
    }
}

/// Samples per axis used to project closed-form profiles onto a lattice of
/// radius `m`.
pub fn quadrature_points(m: usize) -> usize {
    (4 * m + 4).max(32)
}

impl<T: Real> Profile<T> {
    pub fn function<F>(f: F) -> Self
    where
        F: Fn(&[T]) -> T + Send + Sync + 'static,
    {
        Self::Static(Arc::new(f))
    }

    pub fn time_dependent<F>(f: F) -> Self
    where
        F: Fn(T, &[T]) -> T + Send + Sync + 'static,
    {
        Self::Dynamic(Arc::new(f))
    }

    pub fn coefficients(field: SpectralField<T>) -> Self {
        Self::Coefficients(field)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, Self::Dynamic(_))
    }

    /// Fourier coefficients at time `t` on `lattice`.
    pub fn project(&self, lattice: &Lattice, t: T) -> Result<SpectralField<T>> {
        let n = quadrature_points(lattice.radius());
        match self {
            Self::Zero => Ok(SpectralField::zeros(lattice)),
            Self::Static(g) => SpectralField::from_fn(lattice, n, |x| g(x)),
            Self::Dynamic(g) => SpectralField::from_fn(lattice, n, |x| g(t, x)),
            Self::Coefficients(c) => c.project_to(lattice),
        }
    }
}

/// Parameters and data of one fractional Fokker–Planck problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec<T: Real> {
    pub alpha: T,
    pub beta: T,
    /// Diffusion constant `K`.
    pub diffusion: T,
    pub t_final: T,
    pub potential: Profile<T>,
    pub source: Profile<T>,
    pub initial: Profile<T>,
}

impl<T: Real> ProblemSpec<T> {
    /// Problem with zero potential, source and initial datum.
    pub fn new(alpha: T, beta: T, diffusion: T, t_final: T) -> Result<Self> {
        let spec = Self {
            alpha,
            beta,
            diffusion,
            t_final,
            potential: Profile::Zero,
            source: Profile::Zero,
            initial: Profile::Zero,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_potential(mut self, potential: Profile<T>) -> Self {
        self.potential = potential;
        self
    }

    pub fn with_source(mut self, source: Profile<T>) -> Self {
        self.source = source;
        self
    }

    pub fn with_initial(mut self, initial: Profile<T>) -> Self {
        self.initial = initial;
        self
    }

    /// Checks parameter ranges; `β ≤ 1/2` is accepted with a warning.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > T::zero() && self.alpha <= T::one()) {
            return Err(domain("alpha", self.alpha, "0 < alpha ≤ 1"));
        }
        if !(self.beta > T::zero()) || !self.beta.is_finite() {
            return Err(domain("beta", self.beta, "beta > 0"));
        }
        if !(self.diffusion > T::zero()) || !self.diffusion.is_finite() {
            return Err(domain("K", self.diffusion, "K > 0"));
        }
        if !(self.t_final > T::zero()) || !self.t_final.is_finite() {
            return Err(domain("T", self.t_final, "T > 0"));
        }
        if self.beta <= T::lit(0.5) {
            log::warn!("beta = {} ≤ 1/2: outside the range covered by the energy estimates", self.beta);
        }
        Ok(())
    }

    /// Neither the potential nor the source depends on time.
    pub fn is_autonomous(&self) -> bool {
        !self.potential.is_time_dependent() && !self.source.is_time_dependent()
    }

    /// Initial datum must not depend on time.
    pub(crate) fn check_initial(&self) -> Result<()> {
        if self.initial.is_time_dependent() {
            return Err(Error::Unsupported { what: "a time-independent initial datum" });
        }
        Ok(())
    }
}
