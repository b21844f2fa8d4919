use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::fracops::TimeGrid;
use crate::galerkin::{solve_ml, solve_stepping, GalerkinSystem, ProblemSpec, Trajectory};
use crate::scalar::Real;
use crate::spectral::{Lattice, SpectralField};

/// Refinement levels of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergencePlan<T: Real> {
    pub dim: usize,
    /// Spatial radii, compared against `m_reference`.
    pub m_list: Vec<usize>,
    pub m_reference: usize,
    /// Number of equally spaced output times in `(0, T]` for spatial rows.
    pub snapshots: usize,
    /// Step sizes of the temporal rows; `T/Δt` must be integral and every
    /// grid must contain the nodes of the coarsest one.
    pub dt_list: Vec<T>,
    /// Radius used for the temporal rows.
    pub temporal_m: usize,
}

/// One refinement level: `dt` is `None` when the propagator is exact in time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T: Real> {
    pub m: usize,
    pub dt: Option<T>,
    /// `sup_t ‖y − y_ref‖_{l²}` over the compared output times.
    pub error: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable<T: Real> {
    pub spatial: Vec<ConvergenceRow<T>>,
    pub temporal: Vec<ConvergenceRow<T>>,
    /// Least-squares slope of `ln error` against `m`.
    pub spatial_rate: Option<T>,
    /// Least-squares slope of `ln error` against `ln Δt`.
    pub temporal_order: Option<T>,
}

/// Least-squares slope of `ys` against `xs`; `None` with fewer than two
/// points or no spread in `xs`.
pub fn fit_slope<T: Real>(xs: &[T], ys: &[T]) -> Option<T> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let nt = T::from_usize_lossy(n);
    let mx = xs[..n].iter().fold(T::zero(), |a, &x| a + x) / nt;
    let my = ys[..n].iter().fold(T::zero(), |a, &y| a + y) / nt;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    (sxx > T::zero()).then(|| sxy / sxx)
}

/// Propagator when possible, otherwise the stepper with step `dt`.
fn solve_at<T: Real>(problem: &ProblemSpec<T>, lattice: &Lattice, times: &[T], dt: T) -> Result<Trajectory<T>> {
    let system = GalerkinSystem::assemble(problem, lattice)?;
    if system.is_autonomous() {
        match solve_ml(&system, times) {
            Err(Error::IllConditioned { condition, .. }) => {
                log::warn!("propagator rejected (condition {condition:e}); stepping instead");
            }
            other => return other,
        }
    }
    solve_stepping(&system, &TimeGrid::with_step(problem.t_final, dt)?)
}

/// `sup` over `times` of the l² distance, after padding both onto the finer lattice.
fn sup_distance<T: Real>(a: &Trajectory<T>, b: &Trajectory<T>, times: &[T]) -> Result<T> {
    let target = if a.lattice().radius() >= b.lattice().radius() { a.lattice() } else { b.lattice() };
    let mut worst = T::zero();
    for &t in times {
        let fa = a.field_at(t)?.project_to(target)?;
        let fb = b.field_at(t)?.project_to(target)?;
        worst = worst.max(distance(&fa, &fb)?);
    }
    Ok(worst)
}

fn distance<T: Real>(a: &SpectralField<T>, b: &SpectralField<T>) -> Result<T> {
    let diff = a.axpy(-crate::scalar::cx_re(T::one()), b)?;
    Ok(diff.coeffs().iter().fold(T::zero(), |acc, c| acc + c.modulus_squared()).sqrt())
}

/// Spatial and temporal refinement study of `problem`.
///
/// Spatial rows compare each `m` with `m_reference` at `snapshots` output
/// times, using the propagator when the problem is autonomous and well
/// conditioned and the finest step of `dt_list` otherwise. Temporal rows run
/// the stepper at `temporal_m` and compare against the propagator, or against
/// a run with a quarter of the finest step for non-autonomous problems, on the
/// nodes of the coarsest grid.
pub fn convergence_study<T: Real>(problem: &ProblemSpec<T>, plan: &ConvergencePlan<T>) -> Result<ConvergenceTable<T>> {
    for (what, len) in [("m_list", plan.m_list.len()), ("dt_list", plan.dt_list.len())] {
        if len < 3 {
            return Err(Error::InsufficientPoints { what, required: 3, got: len });
        }
    }
    if plan.snapshots == 0 {
        return Err(Error::InsufficientPoints { what: "snapshots", required: 1, got: 0 });
    }
    let t_final = problem.t_final;
    let dt_min = plan.dt_list.iter().copied().fold(T::one() / T::zero(), |a, b| a.min(b));
    let dt_max = plan.dt_list.iter().copied().fold(T::zero(), |a, b| a.max(b));

    let times: Vec<T> =
        (1..=plan.snapshots).map(|j| t_final * T::from_usize_lossy(j) / T::from_usize_lossy(plan.snapshots)).collect();
    let lattice = |m| Lattice::new(plan.dim, m);
    let reference = solve_at(problem, &lattice(plan.m_reference)?, &times, dt_min)?;
    let mut spatial = Vec::with_capacity(plan.m_list.len());
    for &m in &plan.m_list {
        let traj = solve_at(problem, &lattice(m)?, &times, dt_min)?;
        let dt = (traj.grid().is_some()).then_some(dt_min);
        let error = sup_distance(&traj, &reference, &times)?;
        spatial.push(ConvergenceRow { m, dt, error });
    }

    let coarse = TimeGrid::with_step(t_final, dt_max)?;
    let coarse_times = coarse.nodes();
    let temporal_lattice = lattice(plan.temporal_m)?;
    let system = GalerkinSystem::assemble(problem, &temporal_lattice)?;
    let oracle = match system.is_autonomous() {
        true => solve_ml(&system, &coarse_times).or_else(|e| match e {
            Error::IllConditioned { .. } => {
                solve_stepping(&system, &TimeGrid::with_step(t_final, dt_min / T::lit(4.0))?)
            }
            other => Err(other),
        })?,
        false => solve_stepping(&system, &TimeGrid::with_step(t_final, dt_min / T::lit(4.0))?)?,
    };
    let mut temporal = Vec::with_capacity(plan.dt_list.len());
    for &dt in &plan.dt_list {
        let grid = TimeGrid::with_step(t_final, dt)?;
        let traj = solve_stepping(&system, &grid)?;
        let error = sup_distance(&traj, &oracle, &coarse_times)?;
        temporal.push(ConvergenceRow { m: plan.temporal_m, dt: Some(grid.dt()), error });
    }

    let positive = |rows: &[ConvergenceRow<T>], x: &dyn Fn(&ConvergenceRow<T>) -> T| -> Option<T> {
        let (xs, ys): (Vec<T>, Vec<T>) =
            rows.iter().filter(|r| r.error > T::zero()).map(|r| (x(r), r.error.ln())).unzip();
        fit_slope(&xs, &ys)
    };
    let spatial_rate = positive(&spatial, &|r| T::from_usize_lossy(r.m));
    let temporal_order = positive(&temporal, &|r| r.dt.expect("temporal rows carry a step").ln());
    Ok(ConvergenceTable { spatial, temporal, spatial_rate, temporal_order })
}
