//! Matrix functions through an eigendecomposition `A = P·diag(λ)·P⁻¹`.
//!
//! Eigenvectors come from the complex Schur form `A = Q·R·Q*`: the
//! eigenvectors of the triangular factor are found by back substitution and
//! rotated back with `Q`.

use nalgebra::{ComplexField, DMatrix, DVector};

use super::mittag_leffler::ml;
use crate::error::{Error, Result};
use crate::scalar::{cx_re, Cx, Real};

/// Default bound on the eigenvector condition number.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Clone)]
pub struct EigenBasis<T: Real> {
    values: Vec<Cx<T>>,
    vectors: DMatrix<Cx<T>>,
    inverse: DMatrix<Cx<T>>,
    condition: T,
}

fn one_norm<T: Real>(m: &DMatrix<Cx<T>>) -> T {
    m.column_iter().map(|c| c.iter().fold(T::zero(), |acc, z| acc + z.modulus())).fold(T::zero(), |a, b| a.max(b))
}

impl<T: Real> EigenBasis<T> {
    /// Decomposes `a`, failing when `‖P‖₁‖P⁻¹‖₁` exceeds `max_condition`.
    pub fn new(a: &DMatrix<Cx<T>>, max_condition: T) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(Error::NotSquare { rows: n, cols: a.ncols() });
        }
        if n == 0 {
            return Ok(Self {
                values: Vec::new(),
                vectors: DMatrix::zeros(0, 0),
                inverse: DMatrix::zeros(0, 0),
                condition: T::one(),
            });
        }
        let schur = a.clone().try_schur(T::eps(), 1000 * n).ok_or(Error::EigenFailure)?;
        let (q, r) = schur.unpack();

        let scale = one_norm(&r).max(T::lit(1e-300).max(T::eps() * T::eps()));
        let small = T::eps() * scale;
        let mut v = DMatrix::<Cx<T>>::zeros(n, n);
        for i in 0..n {
            let lambda = r[(i, i)];
            v[(i, i)] = cx_re(T::one());
            for j in (0..i).rev() {
                let mut acc = cx_re(T::zero());
                for l in j + 1..=i {
                    acc += r[(j, l)] * v[(l, i)];
                }
                if acc == cx_re(T::zero()) {
                    continue;
                }
                let mut denom = r[(j, j)] - lambda;
                if denom.modulus() < small {
                    denom = cx_re(small);
                }
                v[(j, i)] = -acc / denom;
            }
        }
        let mut p = q * v;
        for mut col in p.column_iter_mut() {
            let norm = col.iter().fold(T::zero(), |acc, z| acc + z.modulus_squared()).sqrt();
            if norm > T::zero() {
                col.unscale_mut(norm);
            }
        }
        let inverse = p
            .clone()
            .try_inverse()
            .ok_or(Error::IllConditioned { condition: f64::INFINITY, limit: max_condition.to_f64_lossy() })?;
        let condition = one_norm(&p) * one_norm(&inverse);
        if !(condition <= max_condition) {
            return Err(Error::IllConditioned {
                condition: condition.to_f64_lossy(),
                limit: max_condition.to_f64_lossy(),
            });
        }
        let values = (0..n).map(|i| r[(i, i)]).collect();
        Ok(Self { values, vectors: p, inverse, condition })
    }

    pub fn eigenvalues(&self) -> &[Cx<T>] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<Cx<T>> {
        &self.vectors
    }

    pub fn inverse(&self) -> &DMatrix<Cx<T>> {
        &self.inverse
    }

    /// `‖P‖₁‖P⁻¹‖₁`.
    pub fn condition(&self) -> T {
        self.condition
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Coordinates of `y` in the eigenbasis, `P⁻¹y`.
    pub fn coordinates(&self, y: &DVector<Cx<T>>) -> DVector<Cx<T>> {
        &self.inverse * y
    }

    /// `P·diag(w)·c` for eigenbasis coordinates `c`.
    pub fn combine(&self, weights: &[Cx<T>], coords: &DVector<Cx<T>>) -> DVector<Cx<T>> {
        let scaled = DVector::from_iterator(self.dim(), weights.iter().zip(coords.iter()).map(|(w, c)| w * c));
        &self.vectors * scaled
    }

    /// `f(A) = P·diag(f(λ))·P⁻¹`.
    pub fn apply<F>(&self, mut f: F) -> Result<DMatrix<Cx<T>>>
    where
        F: FnMut(Cx<T>) -> Result<Cx<T>>,
    {
        let mut scaled = self.vectors.clone();
        for (i, mut col) in scaled.column_iter_mut().enumerate() {
            let w = f(self.values[i])?;
            for z in col.iter_mut() {
                *z *= w;
            }
        }
        Ok(scaled * &self.inverse)
    }
}

/// `E_{α,b}(A)` via the eigendecomposition of `A`.
pub fn ml_matrix<T: Real>(alpha: T, b: T, a: &DMatrix<Cx<T>>) -> Result<DMatrix<Cx<T>>> {
    let basis = EigenBasis::new(a, T::lit(MAX_CONDITION))?;
    basis.apply(|lambda| ml(alpha, b, lambda).map(|e| e.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn zero_matrix_gives_scaled_identity() {
        let a = DMatrix::<Cx<f64>>::zeros(3, 3);
        let e = ml_matrix(0.7, 2.0, &a).unwrap();
        let want = DMatrix::<Cx<f64>>::identity(3, 3) * cx_re(1.0);
        assert!((e - want).norm() < 1e-14);
    }

    #[test]
    fn diagonal_exponential() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![c(-1.0, 0.0), c(-2.0, 0.0)]));
        let e = ml_matrix(1.0, 1.0, &a).unwrap();
        assert!((e[(0, 0)].re - (-1.0_f64).exp()).abs() < 1e-15);
        assert!((e[(1, 1)].re - (-2.0_f64).exp()).abs() < 1e-15);
        assert!(e[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn eigen_reconstruction() {
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(-2.0, 0.0),
                c(1.0, 0.5),
                c(0.0, 0.0),
                c(0.3, 0.0),
                c(-1.0, 0.0),
                c(0.7, -0.2),
                c(0.0, 0.1),
                c(0.2, 0.0),
                c(-3.0, 0.0),
            ],
        );
        let basis = EigenBasis::new(&a, 1e8).unwrap();
        let back = basis.apply(Ok).unwrap();
        assert!((back - &a).norm() < 1e-13);
    }

    #[test]
    fn defective_matrix_is_rejected() {
        let a = DMatrix::from_row_slice(2, 2, &[c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(EigenBasis::new(&a, 1e8), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn non_square_is_rejected() {
        let a = DMatrix::<Cx<f64>>::zeros(2, 3);
        assert!(matches!(EigenBasis::new(&a, 1e8), Err(Error::NotSquare { .. })));
    }
}
