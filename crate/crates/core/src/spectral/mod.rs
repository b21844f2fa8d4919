//! Frequency lattice, grid transforms, spectral multipliers, truncated
//! products and Sobolev norms on the torus `𝕋ᵈ = (ℝ/2πℤ)ᵈ`.

mod field;
mod lattice;
mod transform;

pub use field::{grid_points, min_samples, sample_grid, SpectralField};
pub use lattice::{Lattice, MAX_MODES};
