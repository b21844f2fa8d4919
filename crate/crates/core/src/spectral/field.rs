use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, DVector};

use super::lattice::Lattice;
use super::transform::{contract_axis, transpose, twiddles};
use crate::error::{Error, Result};
use crate::scalar::{cis, cx_re, Cx, Real};

/// Fourier coefficients `û(k) = ⟨u, w_k⟩` of a function on `𝕋ᵈ` against the
/// orthonormal basis `w_k(x) = (2π)^{-d/2} e^{ik·x}`, stored in lattice order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T: Real> {
    lattice: Lattice,
    coeffs: Vec<Cx<T>>,
}

/// Points `x_j = 2πj/n` per axis of the uniform grid, row-major with the first
/// axis most significant (the sample order expected by [`SpectralField::analyze`]).
pub fn grid_points<T: Real>(d: usize, per_axis: usize) -> Vec<Vec<T>> {
    let total = per_axis.pow(d as u32);
    let step = T::two_pi() / T::from_usize_lossy(per_axis);
    (0..total)
        .map(|mut idx| {
            let mut x = vec![T::zero(); d];
            for slot in x.iter_mut().rev() {
                *slot = step * T::from_usize_lossy(idx % per_axis);
                idx /= per_axis;
            }
            x
        })
        .collect()
}

/// Samples `f` on the uniform grid.
pub fn sample_grid<T: Real, F>(d: usize, per_axis: usize, f: F) -> Vec<Cx<T>>
where
    F: Fn(&[T]) -> Cx<T>,
{
    grid_points::<T>(d, per_axis).iter().map(|x| f(x)).collect()
}

/// Smallest per-axis sample count that resolves radius `m` without aliasing.
#[inline]
pub fn min_samples(m: usize) -> usize {
    2 * m + 2
}

impl<T: Real> SpectralField<T> {
    pub fn zeros(lattice: &Lattice) -> Self {
        Self { lattice: lattice.clone(), coeffs: vec![cx_re(T::zero()); lattice.len()] }
    }

    pub fn from_coeffs(lattice: &Lattice, coeffs: Vec<Cx<T>>) -> Result<Self> {
        if coeffs.len() != lattice.len() {
            return Err(Error::SampleCount { expected: lattice.len(), got: coeffs.len() });
        }
        Ok(Self { lattice: lattice.clone(), coeffs })
    }

    pub fn from_vector(lattice: &Lattice, v: &DVector<Cx<T>>) -> Result<Self> {
        Self::from_coeffs(lattice, v.iter().copied().collect())
    }

    /// The basis function `w_k`.
    pub fn basis(lattice: &Lattice, k: &[isize]) -> Result<Self> {
        let idx = lattice.index_of(k).ok_or(Error::PointDimension { expected: lattice.dim(), got: k.len() })?;
        let mut f = Self::zeros(lattice);
        f.coeffs[idx] = cx_re(T::one());
        Ok(f)
    }

    /// The constant function `c`.
    pub fn constant(lattice: &Lattice, c: Cx<T>) -> Self {
        let mut f = Self::zeros(lattice);
        f.coeffs[lattice.zero_index()] = c * T::basis_scale(lattice.dim());
        f
    }

    #[inline]
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    #[inline]
    pub fn coeffs(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Cx<T>] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cx<T>> {
        self.coeffs
    }

    pub fn to_vector(&self) -> DVector<Cx<T>> {
        DVector::from_column_slice(&self.coeffs)
    }

    /// `û(k)`, zero outside the lattice.
    pub fn get(&self, k: &[isize]) -> Cx<T> {
        self.lattice.index_of(k).map_or(cx_re(T::zero()), |i| self.coeffs[i])
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch {
                left_d: self.lattice.dim(),
                left_m: self.lattice.radius(),
                right_d: other.lattice.dim(),
                right_m: other.lattice.radius(),
            });
        }
        Ok(())
    }

    /// Trapezoidal projection of grid samples onto the lattice.
    ///
    /// `samples` holds `per_axis^d` values at `x_j = 2πj/per_axis` in the
    /// order of [`grid_points`]. Exact for trigonometric polynomials of degree
    /// at most `per_axis - m - 1`.
    pub fn analyze(samples: &[Cx<T>], per_axis: usize, lattice: &Lattice) -> Result<Self> {
        let d = lattice.dim();
        let m = lattice.radius();
        if per_axis < min_samples(m) {
            return Err(Error::Undersampled { per_axis, m, required: min_samples(m) });
        }
        let expected = per_axis.pow(d as u32);
        if samples.len() != expected {
            return Err(Error::SampleCount { expected, got: samples.len() });
        }
        let side = lattice.side();
        let tw = twiddles::<T>(m, per_axis, -1);
        let mut dims = vec![per_axis; d];
        let mut data = samples.to_vec();
        for axis in 0..d {
            data = contract_axis(&data, &dims, axis, &tw, side);
            dims[axis] = side;
        }
        let scale = T::basis_scale(d) / T::from_usize_lossy(expected);
        for c in data.iter_mut() {
            *c *= scale;
        }
        Ok(Self { lattice: lattice.clone(), coeffs: data })
    }

    pub fn analyze_real(samples: &[T], per_axis: usize, lattice: &Lattice) -> Result<Self> {
        let cs: Vec<Cx<T>> = samples.iter().map(|&v| cx_re(v)).collect();
        Self::analyze(&cs, per_axis, lattice)
    }

    /// Samples `f` on a grid of `per_axis` points per axis and projects it.
    pub fn from_fn<F>(lattice: &Lattice, per_axis: usize, f: F) -> Result<Self>
    where
        F: Fn(&[T]) -> T,
    {
        let samples = sample_grid(lattice.dim(), per_axis, |x| cx_re(f(x)));
        Self::analyze(&samples, per_axis, lattice)
    }

    /// Pointwise value of the truncated series at `x`.
    pub fn eval(&self, x: &[T]) -> Result<Cx<T>> {
        let d = self.lattice.dim();
        if x.len() != d {
            return Err(Error::PointDimension { expected: d, got: x.len() });
        }
        let m = self.lattice.radius();
        let side = self.lattice.side();
        // Per-axis phase tables e^{i k x_a}, k = -m..m.
        let phases: Vec<Vec<Cx<T>>> = x
            .iter()
            .map(|&xa| (0..side).map(|r| cis(T::from_isize_lossy(r as isize - m as isize) * xa)).collect())
            .collect();
        let mut acc = cx_re(T::zero());
        let mut digits = vec![0usize; d];
        for c in &self.coeffs {
            let mut w = *c;
            for (a, &r) in digits.iter().enumerate() {
                w *= phases[a][r];
            }
            acc += w;
            for slot in digits.iter_mut().rev() {
                *slot += 1;
                if *slot < side {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(acc / T::basis_scale(d))
    }

    /// Pointwise evaluation at a list of points.
    pub fn synthesize(&self, points: &[Vec<T>]) -> Result<Vec<Cx<T>>> {
        points.iter().map(|x| self.eval(x)).collect()
    }

    /// Evaluation on the uniform grid of [`grid_points`], via separable sums.
    pub fn synthesize_grid(&self, per_axis: usize) -> Vec<Cx<T>> {
        let d = self.lattice.dim();
        let side = self.lattice.side();
        let tw = transpose(&twiddles::<T>(self.lattice.radius(), per_axis, 1), side, per_axis);
        let mut dims = vec![side; d];
        let mut data = self.coeffs.clone();
        for axis in 0..d {
            data = contract_axis(&data, &dims, axis, &tw, per_axis);
            dims[axis] = per_axis;
        }
        let scale = T::one() / T::basis_scale(d);
        for v in data.iter_mut() {
            *v *= scale;
        }
        data
    }

    fn map_with_weights(&self, weights: &[T]) -> Self {
        let coeffs = self.coeffs.iter().zip(weights).map(|(&c, &w)| c * w).collect();
        Self { lattice: self.lattice.clone(), coeffs }
    }

    /// `(−Δ)ˢ u`: multiplies `û(k)` by `|k|^{2s}`. The zero mode is annihilated
    /// for `s ≠ 0`; `s = 0` is the identity.
    pub fn frac_laplacian(&self, s: T) -> Self {
        self.map_with_weights(&self.lattice.norm_powers(s * T::lit(2.0)))
    }

    /// Partial derivatives `∂_j u`, with coefficients `i k_j û(k)`.
    pub fn gradient(&self) -> Vec<Self> {
        let d = self.lattice.dim();
        let mut k = vec![0isize; d];
        let mut out: Vec<Self> = (0..d).map(|_| Self::zeros(&self.lattice)).collect();
        for (idx, &c) in self.coeffs.iter().enumerate() {
            self.lattice.write_k(idx, &mut k);
            for (j, comp) in out.iter_mut().enumerate() {
                comp.coeffs[idx] = Cx::new(T::zero(), T::from_isize_lossy(k[j])) * c;
            }
        }
        out
    }

    /// `Σ_j ∂_j F_j` for a vector field given componentwise.
    pub fn divergence(components: &[Self]) -> Result<Self> {
        let first = components.first().ok_or(Error::InsufficientPoints { what: "divergence", required: 1, got: 0 })?;
        let lattice = first.lattice.clone();
        if components.len() != lattice.dim() {
            return Err(Error::PointDimension { expected: lattice.dim(), got: components.len() });
        }
        let mut out = Self::zeros(&lattice);
        let mut k = vec![0isize; lattice.dim()];
        for comp in components {
            first.check_same(comp)?;
        }
        for idx in 0..lattice.len() {
            lattice.write_k(idx, &mut k);
            let mut acc = cx_re(T::zero());
            for (j, comp) in components.iter().enumerate() {
                acc += Cx::new(T::zero(), T::from_isize_lossy(k[j])) * comp.coeffs[idx];
            }
            out.coeffs[idx] = acc;
        }
        Ok(out)
    }

    /// Coefficients of the pointwise product, truncated to the lattice:
    /// `(2π)^{-d/2} Σ_j â(k−j) b̂(j)` over `j, k−j` in the lattice.
    pub fn convolve_product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let lat = &self.lattice;
        let d = lat.dim();
        let m = lat.radius() as isize;
        let scale = T::one() / T::basis_scale(d);
        let mut out = Self::zeros(lat);
        let mut k = vec![0isize; d];
        let mut j = vec![0isize; d];
        let mut diff = vec![0isize; d];
        for kidx in 0..lat.len() {
            lat.write_k(kidx, &mut k);
            let mut acc = cx_re(T::zero());
            for (jidx, &bj) in other.coeffs.iter().enumerate() {
                lat.write_k(jidx, &mut j);
                let mut inside = true;
                for a in 0..d {
                    diff[a] = k[a] - j[a];
                    inside &= diff[a].abs() <= m;
                }
                if inside {
                    // index_of is infallible here: every coordinate is in range.
                    let didx = diff.iter().fold(0usize, |acc, &c| acc * lat.side() + (c + m) as usize);
                    acc += self.coeffs[didx] * bj;
                }
            }
            out.coeffs[kidx] = acc * scale;
        }
        Ok(out)
    }

    /// `⟨u, v⟩ = Σ û(k) conj(v̂(k))`.
    pub fn inner(&self, other: &Self) -> Result<Cx<T>> {
        self.check_same(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).fold(cx_re(T::zero()), |acc, (a, b)| acc + a * b.conj()))
    }

    fn weighted_sq(&self, weights: &[T]) -> T {
        self.coeffs.iter().zip(weights).fold(T::zero(), |acc, (c, &w)| acc + w * c.modulus_squared())
    }

    /// `‖u‖_{L²}`, by Parseval.
    pub fn l2_norm(&self) -> T {
        self.weighted_sq(&vec![T::one(); self.coeffs.len()]).sqrt()
    }

    /// `‖(−Δ)^{s/2} u‖ = (Σ |k|^{2s} |û(k)|²)^{1/2}`.
    pub fn seminorm(&self, s: T) -> T {
        self.weighted_sq(&self.lattice.norm_powers(s * T::lit(2.0))).sqrt()
    }

    /// `‖u‖_{Hˢ} = (‖(−Δ)^{s/2}u‖² + ‖u‖²)^{1/2}`.
    pub fn sobolev_norm(&self, s: T) -> T {
        let semi = self.seminorm(s);
        let l2 = self.l2_norm();
        (semi * semi + l2 * l2).sqrt()
    }

    /// Spatial average `û(0)/(2π)^{d/2}`.
    pub fn mean(&self) -> Cx<T> {
        self.coeffs[self.lattice.zero_index()] / T::basis_scale(self.lattice.dim())
    }

    /// `max_k |û(−k) − conj(û(k))|`; zero for real-valued fields.
    pub fn conjugate_symmetry_defect(&self) -> T {
        (0..self.coeffs.len()).fold(T::zero(), |acc, i| {
            let j = self.lattice.mirror(i);
            acc.max((self.coeffs[j] - self.coeffs[i].conj()).modulus())
        })
    }

    /// Restriction to (or zero-padding onto) another lattice of the same dimension.
    pub fn project_to(&self, target: &Lattice) -> Result<Self> {
        if target.dim() != self.lattice.dim() {
            return Err(Error::PointDimension { expected: target.dim(), got: self.lattice.dim() });
        }
        let mut out = Self::zeros(target);
        let mut k = vec![0isize; target.dim()];
        for (idx, slot) in out.coeffs.iter_mut().enumerate() {
            target.write_k(idx, &mut k);
            *slot = self.get(&k);
        }
        Ok(out)
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: Cx<T>, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| x + a * y).collect();
        Ok(Self { lattice: self.lattice.clone(), coeffs })
    }

    pub fn scale(&self, a: Cx<T>) -> Self {
        Self { lattice: self.lattice.clone(), coeffs: self.coeffs.iter().map(|&c| c * a).collect() }
    }
}

impl<T: Real> Add for &SpectralField<T> {
    type Output = SpectralField<T>;

    /// Panics on lattice mismatch; use [`SpectralField::axpy`] for a checked sum.
    fn add(self, rhs: Self) -> SpectralField<T> {
        self.axpy(cx_re(T::one()), rhs).expect("fields on the same lattice")
    }
}

impl<T: Real> Sub for &SpectralField<T> {
    type Output = SpectralField<T>;

    fn sub(self, rhs: Self) -> SpectralField<T> {
        self.axpy(cx_re(-T::one()), rhs).expect("fields on the same lattice")
    }
}

impl<T: Real> Neg for &SpectralField<T> {
    type Output = SpectralField<T>;

    fn neg(self) -> SpectralField<T> {
        self.scale(cx_re(-T::one()))
    }
}

impl<T: Real> Mul<T> for &SpectralField<T> {
    type Output = SpectralField<T>;

    fn mul(self, rhs: T) -> SpectralField<T> {
        self.scale(cx_re(rhs))
    }
}
