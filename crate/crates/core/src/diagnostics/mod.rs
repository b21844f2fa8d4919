//! Numerical audits of the analytic estimates behind the scheme: the
//! potential constant `c(V)`, Young and coercivity constants, the weak
//! forcing bounds, the fractional Grönwall inequality, energy and regularity
//! norms of trajectories, and refinement studies.
//!
//! Seminorms follow [`SpectralField::seminorm`](crate::SpectralField::seminorm):
//! `seminorm(u, s)² = Σ|k|^{2s}|û(k)|²`, so `‖(−Δ)^{1/4}u‖` is `seminorm(u, 1/2)`.

mod constants;
mod convergence;
mod energy;
mod gronwall;

pub use constants::{
    bilinear_form, coercivity_constants, coercivity_violation, drift_form, forcing_bounds, gradient_l1,
    potential_constant, three_quarter_l1, young_constant, young_constant_for, CoercivityConstants, ForcingBounds,
};
pub use convergence::{convergence_study, fit_slope, ConvergencePlan, ConvergenceRow, ConvergenceTable};
pub use energy::{energy_report, energy_series, EnergyReport};
pub use gronwall::{gronwall_audit, running_max};
