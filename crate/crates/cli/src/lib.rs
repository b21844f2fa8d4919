//! Config-driven experiments on top of `fracgalerkin`: solves, parameter
//! sweeps, convergence studies, diagnostics and stable-law densities, all
//! written as CSV.

// Range checks are written `!(x > a)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod density;
pub mod output;
pub mod profiles;
pub mod run;

pub use config::{parse_config, ConfigError, Experiment, ProfileSpec, RunConfig, SolverChoice, SweepKey};
pub use density::{default_xmax, stable_density, stable_density_at, symmetric_grid, DensityError};
pub use run::{run, RunError};
