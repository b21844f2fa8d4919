//! Fractional-calculus kernels: Mittag-Leffler functions (scalar and matrix),
//! the Riemann–Liouville integral, the L1 Caputo derivative and a linear
//! fractional ODE stepper.

mod calculus;
mod fode;
mod grid;
mod matrix;
mod mittag_leffler;

pub use calculus::{caputo_l1, cumulative_trapezoid, frac_integral, integral_weights, trapezoid};
pub use fode::{solve_linear_fode, Autonomous, LinearRhs, TimeVarying};
pub use grid::TimeGrid;
pub use matrix::{ml_matrix, EigenBasis, MAX_CONDITION};
pub use mittag_leffler::{ml, ml_at_zero, ml_real, tolerance, MlEvaluation, MlMethod, MAX_ARGUMENT};
