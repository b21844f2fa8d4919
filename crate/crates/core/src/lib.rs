//! Fourier–Galerkin solver for the fractional Fokker–Planck equation
//!
//! ```text
//! ∂ₜᵅu + K(−Δ)ᵝu − ∇·(∇V u) = f   on 𝕋ᵈ × (0, T],   u(0) = h,
//! ```
//!
//! with a Caputo time derivative of order `α ∈ (0, 1]` and a fractional
//! Laplacian of order `β`. The truncated Galerkin system is solved either with
//! a matrix Mittag-Leffler propagator or with an implicit fractional
//! Adams–Moulton stepper. The [`diagnostics`] module audits the energy and
//! coercivity estimates the scheme is built on.
//!
//! All numerics are generic over [`Real`]; the `*64` aliases below fix the
//! scalar to `f64`, which is what every documented tolerance assumes.

// Range checks are written `!(x > a)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod fracops;
pub mod galerkin;
pub mod scalar;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{Cx, Real};
pub use spectral::{Lattice, SpectralField};

pub type SpectralField64 = spectral::SpectralField<f64>;
pub type SpectralField32 = spectral::SpectralField<f32>;
pub type ProblemSpec64 = galerkin::ProblemSpec<f64>;
pub type GalerkinSystem64 = galerkin::GalerkinSystem<f64>;
pub type Trajectory64 = galerkin::Trajectory<f64>;
pub type TimeGrid64 = fracops::TimeGrid<f64>;
