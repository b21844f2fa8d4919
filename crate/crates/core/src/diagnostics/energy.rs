use nalgebra::ComplexField;

use crate::error::{Error, Result};
use crate::fracops::{caputo_l1, trapezoid, TimeGrid};
use crate::galerkin::Trajectory;
use crate::scalar::{Cx, Real};

/// Norms entering the energy and regularity estimates of a trajectory.
///
/// Time integrals use the trapezoid rule on the trajectory grid. The Caputo
/// derivative of every mode comes from the L1 scheme (backward differences
/// for `α = 1`) and is only available from `t₁` on, so its integrals add the
/// rectangle `Δt·g(t₁)` for the first step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport<T: Real> {
    /// `sup_t ‖u(t)‖`.
    pub sup_l2: T,
    /// `‖u‖_{L²(0,T; Hᵝ)}`.
    pub l2_h_beta: T,
    /// `‖Dᵅu‖_{L²(0,T; H⁻ᵝ)}` with dual weights `(1 + |k|^{2β})⁻¹`.
    pub l2_h_minus_beta_derivative: T,
    /// `‖h‖`.
    pub initial_l2: T,
    /// `‖h‖_{Hᵝ}`.
    pub initial_h_beta: T,
    /// `sup_t ‖f(t)‖`.
    pub sup_source_l2: T,
    /// `‖u‖_{L²(0,T; H^{2β})}`.
    pub l2_h_two_beta: T,
    /// `sup_t ‖u(t)‖_{Hᵝ}`.
    pub sup_h_beta: T,
    /// `‖Dᵅu‖_{L²(0,T; L²)}`.
    pub l2_l2_derivative: T,
}

fn ratio<T: Real>(lhs: T, rhs: T) -> T {
    if rhs > T::zero() {
        lhs / rhs
    } else if lhs > T::zero() {
        T::one() / T::zero()
    } else {
        T::zero()
    }
}

impl<T: Real> EnergyReport<T> {
    /// `sup‖u‖ + ‖u‖_{L²Hᵝ} + ‖Dᵅu‖_{L²H⁻ᵝ}`.
    pub fn energy_lhs(&self) -> T {
        self.sup_l2 + self.l2_h_beta + self.l2_h_minus_beta_derivative
    }

    /// Energy left-hand side over `‖h‖ + sup‖f‖`; infinite when only the data vanish.
    pub fn energy_ratio(&self) -> T {
        ratio(self.energy_lhs(), self.initial_l2 + self.sup_source_l2)
    }

    /// `‖u‖²_{L²H^{2β}} + sup‖u‖_{Hᵝ} + ‖Dᵅu‖_{L²L²}`.
    pub fn regularity_lhs(&self) -> T {
        self.l2_h_two_beta.powi(2) + self.sup_h_beta + self.l2_l2_derivative
    }

    /// Regularity left-hand side over `‖h‖_{Hᵝ} + sup‖f‖`.
    pub fn regularity_ratio(&self) -> T {
        ratio(self.regularity_lhs(), self.initial_h_beta + self.sup_source_l2)
    }

    /// `(name, value)` pairs for tabular output.
    pub fn entries(&self) -> Vec<(&'static str, T)> {
        vec![
            ("sup_l2", self.sup_l2),
            ("l2_h_beta", self.l2_h_beta),
            ("l2_h_minus_beta_derivative", self.l2_h_minus_beta_derivative),
            ("initial_l2", self.initial_l2),
            ("initial_h_beta", self.initial_h_beta),
            ("sup_source_l2", self.sup_source_l2),
            ("l2_h_two_beta", self.l2_h_two_beta),
            ("sup_h_beta", self.sup_h_beta),
            ("l2_l2_derivative", self.l2_l2_derivative),
            ("energy_ratio", self.energy_ratio()),
            ("regularity_ratio", self.regularity_ratio()),
        ]
    }
}

/// `∫₀ᵀ g` for samples at `t₁..t_n`.
fn integrate_from_first<T: Real>(samples: &[T], dt: T) -> T {
    match samples.first() {
        None => T::zero(),
        Some(&g1) => dt * g1 + trapezoid(samples, dt),
    }
}

/// Caputo derivative of every mode at `t₁..t_n`, indexed `[time][mode]`.
fn mode_derivatives<T: Real>(traj: &Trajectory<T>, grid: &TimeGrid<T>) -> Result<Vec<Vec<Cx<T>>>> {
    let alpha = traj.problem().alpha;
    let states = traj.states();
    let n = traj.lattice().len();
    let steps = grid.steps();
    let mut out = vec![Vec::with_capacity(n); steps];
    let mut series = Vec::with_capacity(steps + 1);
    for mode in 0..n {
        series.clear();
        series.extend(states.iter().map(|y| y[mode]));
        let d = if alpha == T::one() {
            series.windows(2).map(|w| (w[1] - w[0]) / grid.dt()).collect()
        } else {
            caputo_l1(alpha, &series, grid)?
        };
        for (row, v) in out.iter_mut().zip(d) {
            row.push(v);
        }
    }
    Ok(out)
}

/// Energy and regularity norms of a trajectory on a uniform grid.
pub fn energy_report<T: Real>(traj: &Trajectory<T>) -> Result<EnergyReport<T>> {
    let grid = *traj.grid().ok_or(Error::Unsupported { what: "a trajectory on a uniform time grid" })?;
    let lattice = traj.lattice();
    let problem = traj.problem();
    let beta = problem.beta;
    let w = lattice.norm_powers::<T>(T::lit(2.0) * beta);
    let weighted = |y: &mut dyn Iterator<Item = Cx<T>>, f: &dyn Fn(T) -> T| -> T {
        y.zip(&w).fold(T::zero(), |acc, (c, &wk)| acc + f(wk) * c.modulus_squared())
    };

    let mut l2 = Vec::with_capacity(traj.len());
    let mut hb = Vec::with_capacity(traj.len());
    let mut h2b = Vec::with_capacity(traj.len());
    for y in traj.states() {
        l2.push(weighted(&mut y.iter().copied(), &|_| T::one()));
        hb.push(weighted(&mut y.iter().copied(), &|wk| T::one() + wk));
        h2b.push(weighted(&mut y.iter().copied(), &|wk| T::one() + wk * wk));
    }
    let derivs = mode_derivatives(traj, &grid)?;
    let dual: Vec<T> =
        derivs.iter().map(|d| weighted(&mut d.iter().copied(), &|wk| T::one() / (T::one() + wk))).collect();
    let plain: Vec<T> = derivs.iter().map(|d| weighted(&mut d.iter().copied(), &|_| T::one())).collect();

    let mut sup_source = T::zero();
    if problem.source.is_time_dependent() {
        for &t in traj.times() {
            sup_source = sup_source.max(problem.source.project(lattice, t)?.l2_norm());
        }
    } else {
        sup_source = problem.source.project(lattice, T::zero())?.l2_norm();
    }

    let dt = grid.dt();
    let sup_sqrt = |v: &[T]| v.iter().fold(T::zero(), |acc, &x| acc.max(x.sqrt()));
    Ok(EnergyReport {
        sup_l2: sup_sqrt(&l2),
        l2_h_beta: trapezoid(&hb, dt).sqrt(),
        l2_h_minus_beta_derivative: integrate_from_first(&dual, dt).sqrt(),
        initial_l2: l2[0].sqrt(),
        initial_h_beta: hb[0].sqrt(),
        sup_source_l2: sup_source,
        l2_h_two_beta: trapezoid(&h2b, dt).sqrt(),
        sup_h_beta: sup_sqrt(&hb),
        l2_l2_derivative: integrate_from_first(&plain, dt).sqrt(),
    })
}

/// `‖u(t_j)‖²` at every output time.
pub fn energy_series<T: Real>(traj: &Trajectory<T>) -> Vec<T> {
    traj.states().iter().map(|y| y.iter().fold(T::zero(), |acc, c| acc + c.modulus_squared())).collect()
}
