//! Truncated Fourier–Galerkin system and its two solvers.
//!
//! With `u_m(t) = Σ_{|k|_∞ ≤ m} y_k(t) w_k` the weak equation becomes the
//! linear Caputo system `Dᵅy = A(t)·y + f̂(t)`. The zero row of `A` decouples
//! the mass mode, so `y_0` only changes through the mean of the source.

mod problem;
pub mod profiles;
mod solve;
mod system;

pub use problem::{quadrature_points, ProblemSpec, Profile};
pub use solve::{evaluate, mass_drift, solve_ml, solve_ml_on_grid, solve_stepping, SolverKind, Trajectory};
pub use system::{galerkin_matrix, GalerkinSystem};
