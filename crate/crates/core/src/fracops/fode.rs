//! Fractional Adams–Moulton (product trapezoid) integration of linear Caputo
//! systems `Dᵅy = A(t)·y + g(t)`, `y(0) = y₀`.
//!
//! The corrector of the Adams–Bashforth–Moulton scheme is solved exactly
//! instead of being evaluated once at the predictor: for a linear right-hand
//! side this is one linear solve per step, and it keeps stiff modes
//! (`|λ|Δtᵅ ≫ 1`) bounded. Weights and order are those of the ABM corrector.

use nalgebra::{DMatrix, DVector};

use super::grid::TimeGrid;
use crate::error::{domain, Error, Result};
use crate::scalar::{cx_re, Cx, Real};
use crate::special::gamma;

/// Right-hand side `A(t)·y + g(t)` of a linear fractional system.
pub trait LinearRhs<T: Real> {
    fn dim(&self) -> usize;

    fn matrix(&mut self, t: T) -> DMatrix<Cx<T>>;

    /// `None` stands for `g ≡ 0`.
    fn forcing(&mut self, t: T) -> Option<DVector<Cx<T>>>;

    /// `A` does not depend on `t`; the step matrix is factored once.
    fn constant_matrix(&self) -> bool {
        false
    }
}

/// Constant `A` and `g`.
#[derive(Debug, Clone, Copy)]
pub struct Autonomous<'a, T: Real> {
    pub matrix: &'a DMatrix<Cx<T>>,
    pub forcing: Option<&'a DVector<Cx<T>>>,
}

impl<T: Real> LinearRhs<T> for Autonomous<'_, T> {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn matrix(&mut self, _t: T) -> DMatrix<Cx<T>> {
        self.matrix.clone()
    }

    fn forcing(&mut self, _t: T) -> Option<DVector<Cx<T>>> {
        self.forcing.cloned()
    }

    fn constant_matrix(&self) -> bool {
        true
    }
}

/// `A(t)` and `g(t)` given as closures.
pub struct TimeVarying<FA, FG> {
    pub dim: usize,
    pub matrix_at: FA,
    pub forcing_at: FG,
}

impl<T, FA, FG> LinearRhs<T> for TimeVarying<FA, FG>
where
    T: Real,
    FA: FnMut(T) -> DMatrix<Cx<T>>,
    FG: FnMut(T) -> DVector<Cx<T>>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn matrix(&mut self, t: T) -> DMatrix<Cx<T>> {
        (self.matrix_at)(t)
    }

    fn forcing(&mut self, t: T) -> Option<DVector<Cx<T>>> {
        Some((self.forcing_at)(t))
    }
}

/// `A·y + g`.
fn apply<T: Real>(a: &DMatrix<Cx<T>>, y: &DVector<Cx<T>>, g: Option<&DVector<Cx<T>>>) -> DVector<Cx<T>> {
    let mut out = a * y;
    if let Some(g) = g {
        out += g;
    }
    out
}

/// Integrates the system on `grid`, returning `y(t_j)` for every node.
///
/// Step `n + 1` solves `(I − c·A(t_{n+1}))·y_{n+1} = y₀ + Σ_{j≤n} a_j f_j + c·g(t_{n+1})`
/// with `c = Δtᵅ/Γ(α+2)` and the product-trapezoid weights `a_j`.
pub fn solve_linear_fode<T, S>(
    alpha: T,
    system: &mut S,
    y0: &DVector<Cx<T>>,
    grid: &TimeGrid<T>,
) -> Result<Vec<DVector<Cx<T>>>>
where
    T: Real,
    S: LinearRhs<T> + ?Sized,
{
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(domain("alpha", alpha, "0 < alpha ≤ 1"));
    }
    let dim = system.dim();
    if y0.len() != dim {
        return Err(Error::SampleCount { expected: dim, got: y0.len() });
    }
    let steps = grid.steps();
    let a1 = alpha + T::one();
    let pw = |x: usize, p: T| T::from_usize_lossy(x).powf(p);
    let c = grid.dt().powf(alpha) / gamma(alpha + T::lit(2.0));
    let corr: Vec<T> = (0..steps).map(|l| c * (pw(l + 2, a1) - T::lit(2.0) * pw(l + 1, a1) + pw(l, a1))).collect();
    let step_matrix = |a: &DMatrix<Cx<T>>| DMatrix::<Cx<T>>::identity(dim, dim) - a * cx_re(c);

    let a0 = system.matrix(grid.t(0));
    let g0 = system.forcing(grid.t(0));
    let fixed = system.constant_matrix().then(|| step_matrix(&a0).lu());

    let mut states = Vec::with_capacity(steps + 1);
    let mut rhs: Vec<DVector<Cx<T>>> = Vec::with_capacity(steps + 1);
    rhs.push(apply(&a0, y0, g0.as_ref()));
    states.push(y0.clone());

    let mut acc = vec![cx_re(T::zero()); dim];
    for n in 0..steps {
        let t_next = grid.t(n + 1);
        let nt = T::from_usize_lossy(n);
        let w0 = c * (pw(n, a1) - (nt - alpha) * pw(n + 1, alpha));
        for ((a, &y), &f0) in acc.iter_mut().zip(y0.iter()).zip(rhs[0].iter()) {
            *a = y + f0 * w0;
        }
        for (j, f) in rhs.iter().enumerate().skip(1) {
            let w = corr[n - j];
            for (a, &v) in acc.iter_mut().zip(f.iter()) {
                *a += v * w;
            }
        }
        let a_next = fixed.is_none().then(|| system.matrix(t_next));
        let g_next = system.forcing(t_next);
        let mut b = DVector::from_column_slice(&acc);
        if let Some(g) = &g_next {
            b += g * cx_re(c);
        }
        let solved = match (&fixed, &a_next) {
            (Some(lu), _) => lu.solve(&b),
            (None, Some(a)) => step_matrix(a).lu().solve(&b),
            (None, None) => unreachable!("time-varying systems evaluate A at every step"),
        };
        let y = solved.ok_or(Error::SingularStep { t: t_next.to_f64_lossy() })?;
        rhs.push(apply(a_next.as_ref().unwrap_or(&a0), &y, g_next.as_ref()));
        states.push(y);
    }
    Ok(states)
}
