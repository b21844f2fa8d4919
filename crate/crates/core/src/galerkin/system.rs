use nalgebra::{DMatrix, DVector};

use super::problem::ProblemSpec;
use crate::error::Result;
use crate::scalar::{cx_re, Cx, Real};
use crate::spectral::{Lattice, SpectralField};

/// Truncated Galerkin system `Dᵅy = A(t)·y + f̂(t)`, `y(0) = ĥ`.
///
/// `A[k, j] = −K|k|^{2β}δ_{kj} − (2π)^{−d/2}(k·(k−j))·V̂(k−j)`, with the drift
/// entry zero whenever `k − j` leaves the lattice.
#[derive(Debug, Clone)]
pub struct GalerkinSystem<T: Real> {
    problem: ProblemSpec<T>,
    lattice: Lattice,
    potential: SpectralField<T>,
    matrix: DMatrix<Cx<T>>,
    forcing: DVector<Cx<T>>,
    initial: DVector<Cx<T>>,
}

/// Diagonal `−K|k|^{2β}` plus the drift block of `potential`.
pub fn galerkin_matrix<T: Real>(potential: &SpectralField<T>, diffusion: T, beta: T) -> DMatrix<Cx<T>> {
    let lattice = potential.lattice();
    let n = lattice.len();
    let d = lattice.dim();
    let mut a = DMatrix::<Cx<T>>::zeros(n, n);
    for (i, p) in lattice.norm_powers::<T>(T::lit(2.0) * beta).into_iter().enumerate() {
        a[(i, i)] = cx_re(-diffusion * p);
    }
    let scale = T::one() / T::basis_scale(d);
    let ks: Vec<Vec<isize>> = lattice.modes().collect();
    let mut j = vec![0isize; d];
    for (li, v) in potential.coeffs().iter().enumerate() {
        if *v == cx_re(T::zero()) {
            continue;
        }
        let l = &ks[li];
        for (ki, k) in ks.iter().enumerate() {
            for ((slot, &kc), &lc) in j.iter_mut().zip(k).zip(l) {
                *slot = kc - lc;
            }
            let Some(ji) = lattice.index_of(&j) else { continue };
            let kl: isize = k.iter().zip(l).map(|(a, b)| a * b).sum();
            if kl != 0 {
                a[(ki, ji)] -= *v * (scale * T::from_isize_lossy(kl));
            }
        }
    }
    a
}

impl<T: Real> GalerkinSystem<T> {
    /// Projects potential, source and initial datum onto `lattice` and builds
    /// the matrix at `t = 0`.
    pub fn assemble(problem: &ProblemSpec<T>, lattice: &Lattice) -> Result<Self> {
        problem.validate()?;
        problem.check_initial()?;
        let potential = problem.potential.project(lattice, T::zero())?;
        let matrix = galerkin_matrix(&potential, problem.diffusion, problem.beta);
        let forcing = problem.source.project(lattice, T::zero())?.to_vector();
        let initial = problem.initial.project(lattice, T::zero())?.to_vector();
        Ok(Self { problem: problem.clone(), lattice: lattice.clone(), potential, matrix, forcing, initial })
    }

    pub fn problem(&self) -> &ProblemSpec<T> {
        &self.problem
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.len()
    }

    /// Truncated potential `V_m` at `t = 0`.
    pub fn potential(&self) -> &SpectralField<T> {
        &self.potential
    }

    /// `A(0)`.
    pub fn matrix(&self) -> &DMatrix<Cx<T>> {
        &self.matrix
    }

    /// `f̂(0)`.
    pub fn forcing(&self) -> &DVector<Cx<T>> {
        &self.forcing
    }

    /// `ĥ`.
    pub fn initial(&self) -> &DVector<Cx<T>> {
        &self.initial
    }

    pub fn is_autonomous(&self) -> bool {
        self.problem.is_autonomous()
    }

    pub fn potential_at(&self, t: T) -> Result<SpectralField<T>> {
        if self.problem.potential.is_time_dependent() {
            self.problem.potential.project(&self.lattice, t)
        } else {
            Ok(self.potential.clone())
        }
    }

    /// `A(t)`; the drift block is rebuilt when the potential depends on time.
    pub fn operator_at(&self, t: T) -> Result<DMatrix<Cx<T>>> {
        if self.problem.potential.is_time_dependent() {
            let v = self.problem.potential.project(&self.lattice, t)?;
            Ok(galerkin_matrix(&v, self.problem.diffusion, self.problem.beta))
        } else {
            Ok(self.matrix.clone())
        }
    }

    /// `f̂(t)`.
    pub fn forcing_at(&self, t: T) -> Result<DVector<Cx<T>>> {
        if self.problem.source.is_time_dependent() {
            Ok(self.problem.source.project(&self.lattice, t)?.to_vector())
        } else {
            Ok(self.forcing.clone())
        }
    }
}
