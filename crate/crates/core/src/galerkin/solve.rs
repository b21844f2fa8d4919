use nalgebra::{ComplexField, DMatrix, DVector};

use super::problem::ProblemSpec;
use super::system::GalerkinSystem;
use crate::error::{domain, Error, Result};
use crate::fracops::{ml, solve_linear_fode, EigenBasis, LinearRhs, TimeGrid, MAX_CONDITION};
use crate::scalar::{cx_re, Cx, Real};
use crate::spectral::{Lattice, SpectralField};

/// Which integrator produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    MittagLeffler,
    Stepping,
}

/// Coefficient vectors `y(t)` at a list of output times.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    problem: ProblemSpec<T>,
    lattice: Lattice,
    times: Vec<T>,
    states: Vec<DVector<Cx<T>>>,
    grid: Option<TimeGrid<T>>,
    solver: SolverKind,
}

impl<T: Real> Trajectory<T> {
    pub fn problem(&self) -> &ProblemSpec<T> {
        &self.problem
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[DVector<Cx<T>>] {
        &self.states
    }

    /// The uniform grid behind the output times, when there is one.
    pub fn grid(&self) -> Option<&TimeGrid<T>> {
        self.grid.as_ref()
    }

    pub fn solver(&self) -> SolverKind {
        self.solver
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Position of output time `t`, matched to a relative tolerance of `1e-12`.
    pub fn index_of_time(&self, t: T) -> Result<usize> {
        let scale = T::one().max(self.problem.t_final.abs());
        let tol = T::lit(1e-12).max(T::eps() * T::lit(16.0)) * scale;
        self.times.iter().position(|&s| (s - t).abs() <= tol).ok_or(Error::UnknownSnapshot { t: t.to_f64_lossy() })
    }

    pub fn field(&self, index: usize) -> SpectralField<T> {
        SpectralField::from_vector(&self.lattice, &self.states[index]).expect("state length matches lattice")
    }

    pub fn field_at(&self, t: T) -> Result<SpectralField<T>> {
        self.index_of_time(t).map(|i| self.field(i))
    }

    /// Zero-mode coefficient `û(0, t_j)` at every output time.
    pub fn mass_mode(&self) -> Vec<Cx<T>> {
        let z = self.lattice.zero_index();
        self.states.iter().map(|y| y[z]).collect()
    }
}

/// Matrix Mittag-Leffler propagator for autonomous problems:
/// `y(t) = E_α(A tᵅ)·y₀ + tᵅ·E_{α,α+1}(A tᵅ)·f̂`.
///
/// Fails with [`Error::IllConditioned`] when the eigenbasis of `A` is too
/// ill-conditioned; [`solve_stepping`] is the fallback.
pub fn solve_ml<T: Real>(system: &GalerkinSystem<T>, times: &[T]) -> Result<Trajectory<T>> {
    if !system.is_autonomous() {
        return Err(Error::Unsupported { what: "a time-independent potential and source" });
    }
    for &t in times {
        if !(t >= T::zero()) || !t.is_finite() {
            return Err(domain("t", t, "t ≥ 0"));
        }
    }
    let alpha = system.problem().alpha;
    let basis = EigenBasis::new(system.matrix(), T::lit(MAX_CONDITION))?;
    log::debug!("eigenbasis of {} modes, condition {:e}", basis.dim(), basis.condition());
    let y0 = system.initial();
    let c0 = basis.coordinates(y0);
    let forced = system.forcing().iter().any(|&v| v != cx_re(T::zero()));
    let cf = forced.then(|| basis.coordinates(system.forcing()));

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        if t == T::zero() {
            states.push(y0.clone());
            continue;
        }
        let ta = t.powf(alpha);
        let mut coords = DVector::<Cx<T>>::zeros(basis.dim());
        for (i, &lambda) in basis.eigenvalues().iter().enumerate() {
            let z = lambda * ta;
            coords[i] = ml(alpha, T::one(), z)?.value * c0[i];
            if let Some(cf) = &cf {
                coords[i] += ml(alpha, alpha + T::one(), z)?.value * cf[i] * ta;
            }
        }
        states.push(basis.vectors() * coords);
    }
    Ok(Trajectory {
        problem: system.problem().clone(),
        lattice: system.lattice().clone(),
        times: times.to_vec(),
        states,
        grid: None,
        solver: SolverKind::MittagLeffler,
    })
}

/// [`solve_ml`] evaluated at every node of `grid`.
pub fn solve_ml_on_grid<T: Real>(system: &GalerkinSystem<T>, grid: &TimeGrid<T>) -> Result<Trajectory<T>> {
    let mut traj = solve_ml(system, &grid.nodes())?;
    traj.grid = Some(*grid);
    Ok(traj)
}

/// `A(t)` and `f̂(t)` of a Galerkin system; the first projection failure is kept.
struct GalerkinRhs<'a, T: Real> {
    system: &'a GalerkinSystem<T>,
    failure: Option<Error>,
}

impl<T: Real> GalerkinRhs<'_, T> {
    fn record<V>(&mut self, value: Result<V>, fallback: impl FnOnce() -> V) -> V {
        value.unwrap_or_else(|e| {
            self.failure.get_or_insert(e);
            fallback()
        })
    }
}

impl<T: Real> LinearRhs<T> for GalerkinRhs<'_, T> {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn matrix(&mut self, t: T) -> DMatrix<Cx<T>> {
        let n = self.dim();
        let a = self.system.operator_at(t);
        self.record(a, || DMatrix::zeros(n, n))
    }

    fn forcing(&mut self, t: T) -> Option<DVector<Cx<T>>> {
        let n = self.dim();
        let f = self.system.forcing_at(t);
        let f = self.record(f, || DVector::zeros(n));
        f.iter().any(|v| *v != cx_re(T::zero())).then_some(f)
    }

    fn constant_matrix(&self) -> bool {
        !self.system.problem().potential.is_time_dependent()
    }
}

/// Fractional Adams–Moulton integration on `grid`; handles time dependent
/// potentials and sources.
pub fn solve_stepping<T: Real>(system: &GalerkinSystem<T>, grid: &TimeGrid<T>) -> Result<Trajectory<T>> {
    let mut rhs = GalerkinRhs { system, failure: None };
    let states = solve_linear_fode(system.problem().alpha, &mut rhs, system.initial(), grid)?;
    if let Some(e) = rhs.failure {
        return Err(e);
    }
    Ok(Trajectory {
        problem: system.problem().clone(),
        lattice: system.lattice().clone(),
        times: grid.nodes(),
        states,
        grid: Some(*grid),
        solver: SolverKind::Stepping,
    })
}

/// `max_j |û(0, t_j) − û(0, 0)|`.
pub fn mass_drift<T: Real>(traj: &Trajectory<T>) -> T {
    let mass = traj.mass_mode();
    let Some(&first) = mass.first() else { return T::zero() };
    mass.iter().fold(T::zero(), |acc, &m| acc.max((m - first).modulus()))
}

/// Real part of `u(x, t)` at an output time; logs a warning when the
/// imaginary part exceeds `1e-8`.
pub fn evaluate<T: Real>(traj: &Trajectory<T>, x: &[T], t: T) -> Result<T> {
    let field = traj.field_at(t)?;
    let v = field.eval(x)?;
    if v.im.abs() > T::lit(1e-8) {
        log::warn!("imaginary residue {:e} at t = {}", v.im, t);
    }
    Ok(v.re)
}
