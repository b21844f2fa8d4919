#![allow(dead_code)]

use fracgalerkin::{Cx, Lattice, SpectralField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random trigonometric polynomial; real-valued when `real`, zero-mean when `zero_mean`.
pub fn random_field(lattice: &Lattice, rng: &mut impl Rng, real: bool, zero_mean: bool) -> SpectralField<f64> {
    let mut coeffs: Vec<Cx<f64>> =
        (0..lattice.len()).map(|_| Cx::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    if real {
        for i in 0..lattice.len() {
            let j = lattice.mirror(i);
            if j < i {
                coeffs[i] = coeffs[j].conj();
            } else if j == i {
                coeffs[i].im = 0.0;
            }
        }
    }
    if zero_mean {
        coeffs[lattice.zero_index()] = Cx::new(0.0, 0.0);
    }
    SpectralField::from_coeffs(lattice, coeffs).unwrap()
}

pub fn max_abs_diff(a: &SpectralField<f64>, b: &SpectralField<f64>) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
