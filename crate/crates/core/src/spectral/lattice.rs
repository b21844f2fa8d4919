use crate::error::{Error, Result};
use crate::scalar::Real;

/// Upper bound on the number of retained modes.
pub const MAX_MODES: usize = 10_000_000;

/// Truncated frequency set `{k ∈ ℤᵈ : |k|_∞ ≤ m}`.
///
/// Modes are ordered lexicographically on `(k₁, …, k_d)`, each coordinate
/// running from `-m` to `m`, first coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    d: usize,
    m: usize,
    len: usize,
}

impl Lattice {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let side = 2 * m + 1;
        let mut len = 1usize;
        for _ in 0..d {
            len = len.checked_mul(side).filter(|&n| n <= MAX_MODES).ok_or(Error::LatticeTooLarge {
                d,
                m,
                limit: MAX_MODES,
            })?;
        }
        Ok(Self { d, m, len })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Truncation radius `m`.
    #[inline]
    pub fn radius(&self) -> usize {
        self.m
    }

    /// Modes per axis, `2m + 1`.
    #[inline]
    pub fn side(&self) -> usize {
        2 * self.m + 1
    }

    /// Number of modes, `(2m+1)ᵈ`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, k: &[isize]) -> bool {
        k.len() == self.d && k.iter().all(|&c| c.unsigned_abs() <= self.m)
    }

    /// Linear index of `k`, or `None` outside the lattice.
    pub fn index_of(&self, k: &[isize]) -> Option<usize> {
        if !self.contains(k) {
            return None;
        }
        let side = self.side();
        let m = self.m as isize;
        Some(k.iter().fold(0usize, |acc, &c| acc * side + (c + m) as usize))
    }

    /// Multi-index at linear position `idx`.
    pub fn k_of(&self, idx: usize) -> Vec<isize> {
        let mut k = vec![0; self.d];
        self.write_k(idx, &mut k);
        k
    }

    pub(crate) fn write_k(&self, mut idx: usize, k: &mut [isize]) {
        debug_assert!(idx < self.len);
        let side = self.side();
        for slot in k.iter_mut().rev() {
            *slot = (idx % side) as isize - self.m as isize;
            idx /= side;
        }
    }

    /// Linear index of `-k`.
    #[inline]
    pub fn mirror(&self, idx: usize) -> usize {
        self.len - 1 - idx
    }

    /// Index of the zero mode.
    #[inline]
    pub fn zero_index(&self) -> usize {
        self.len / 2
    }

    /// All multi-indices in lattice order.
    pub fn modes(&self) -> impl Iterator<Item = Vec<isize>> + '_ {
        (0..self.len).map(move |i| self.k_of(i))
    }

    /// Squared Euclidean norm `|k|²` of every mode, in lattice order.
    pub fn norms_sq(&self) -> Vec<usize> {
        let mut k = vec![0isize; self.d];
        (0..self.len)
            .map(|i| {
                self.write_k(i, &mut k);
                k.iter().map(|&c| (c * c) as usize).sum()
            })
            .collect()
    }

    /// `|k|^p` for every mode; the zero mode maps to zero for every `p > 0`
    /// and to one for `p = 0`.
    pub fn norm_powers<T: Real>(&self, p: T) -> Vec<T> {
        let half = p / T::lit(2.0);
        self.norms_sq()
            .into_iter()
            .map(|n2| {
                if p == T::zero() {
                    T::one()
                } else if n2 == 0 {
                    T::zero()
                } else {
                    T::from_usize_lossy(n2).powf(half)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_order() {
        let lat = Lattice::new(1, 2).unwrap();
        assert_eq!(lat.len(), 5);
        let ks: Vec<isize> = lat.modes().map(|k| k[0]).collect();
        assert_eq!(ks, vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn two_dimensional_count_and_order() {
        let lat = Lattice::new(2, 1).unwrap();
        assert_eq!(lat.len(), 9);
        assert_eq!(lat.k_of(0), vec![-1, -1]);
        assert_eq!(lat.k_of(1), vec![-1, 0]);
        assert_eq!(lat.k_of(3), vec![0, -1]);
        assert_eq!(lat.k_of(lat.zero_index()), vec![0, 0]);
    }

    #[test]
    fn degenerate_lattice() {
        let lat = Lattice::new(1, 0).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.k_of(0), vec![0]);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(Lattice::new(0, 3), Err(Error::ZeroDimension));
        assert!(matches!(Lattice::new(3, 200), Err(Error::LatticeTooLarge { .. })));
        assert!(matches!(Lattice::new(64, 1), Err(Error::LatticeTooLarge { .. })));
        // 215^3 ≈ 9.9e6 is still admissible.
        assert!(Lattice::new(3, 107).is_ok());
    }

    #[test]
    fn index_maps_are_inverse_and_symmetric() {
        for (d, m) in [(1, 3), (2, 2), (3, 1)] {
            let lat = Lattice::new(d, m).unwrap();
            for i in 0..lat.len() {
                let k = lat.k_of(i);
                assert_eq!(lat.index_of(&k), Some(i));
                let neg: Vec<isize> = k.iter().map(|c| -c).collect();
                assert_eq!(lat.index_of(&neg), Some(lat.mirror(i)));
            }
            assert_eq!(lat.index_of(&vec![m as isize + 1; d]), None);
        }
    }

    #[test]
    fn norm_powers_zero_mode() {
        let lat = Lattice::new(2, 4).unwrap();
        let p: Vec<f64> = lat.norm_powers(1.0);
        assert_eq!(p[lat.zero_index()], 0.0);
        let i = lat.index_of(&[3, 4]).unwrap();
        assert!((p[i] - 5.0).abs() < 1e-15);
    }
}
