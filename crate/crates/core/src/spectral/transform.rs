//! Separable trapezoidal transforms between uniform grids and lattices.

use crate::scalar::{cis, Cx, Real};

/// Applies a dense `rows × dims[axis]` matrix along one axis of a
/// row-major tensor with shape `dims`, returning the new tensor.
pub(crate) fn contract_axis<T: Real>(
    data: &[Cx<T>],
    dims: &[usize],
    axis: usize,
    matrix: &[Cx<T>],
    rows: usize,
) -> Vec<Cx<T>> {
    let n = dims[axis];
    let outer: usize = dims[..axis].iter().product();
    let inner: usize = dims[axis + 1..].iter().product();
    debug_assert_eq!(matrix.len(), rows * n);
    debug_assert_eq!(data.len(), outer * n * inner);

    let mut out = vec![Cx::new(T::zero(), T::zero()); outer * rows * inner];
    for o in 0..outer {
        let src = &data[o * n * inner..(o + 1) * n * inner];
        let dst = &mut out[o * rows * inner..(o + 1) * rows * inner];
        for r in 0..rows {
            let row = &matrix[r * n..(r + 1) * n];
            let target = &mut dst[r * inner..(r + 1) * inner];
            for (j, &w) in row.iter().enumerate() {
                let line = &src[j * inner..(j + 1) * inner];
                for (t, &v) in target.iter_mut().zip(line) {
                    *t += w * v;
                }
            }
        }
    }
    out
}

/// `e^{sign·i·k·x_j}` for `k ∈ [-m, m]` (rows) and `x_j = 2πj/n` (columns),
/// with the phase reduced exactly modulo `n`.
pub(crate) fn twiddles<T: Real>(m: usize, n: usize, sign: isize) -> Vec<Cx<T>> {
    let side = 2 * m + 1;
    let n_i = n as isize;
    let step = T::two_pi() / T::from_usize_lossy(n);
    let mut out = Vec::with_capacity(side * n);
    for r in 0..side {
        let k = r as isize - m as isize;
        for j in 0..n {
            let phase = (sign * k * j as isize).rem_euclid(n_i);
            out.push(cis(step * T::from_isize_lossy(phase)));
        }
    }
    out
}

/// Transposes a `rows × cols` row-major matrix.
pub(crate) fn transpose<T: Copy>(matrix: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(matrix.len());
    for c in 0..cols {
        for r in 0..rows {
            out.push(matrix[r * cols + c]);
        }
    }
    out
}
