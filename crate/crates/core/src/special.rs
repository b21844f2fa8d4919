//! Gamma function family (Lanczos approximation, g = 7, nine terms).

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(πx)` with argument reduction, exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let r = x - two * (x / two).round();
    if r == r.round() {
        return T::zero();
    }
    (T::pi() * r).sin()
}

fn lanczos_sum<T: Real>(x: T) -> T {
    let mut a = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += T::lit(c) / (x + T::from_usize_lossy(i));
    }
    a
}

/// `ln Γ(x)` for `x ≥ 1/2`.
fn ln_gamma_right<T: Real>(x: T) -> T {
    let x = x - T::one();
    let half = T::lit(0.5);
    let t = x + T::lit(LANCZOS_G) + half;
    half * T::two_pi().ln() + (x + half) * t.ln() - t + lanczos_sum(x).ln()
}

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// `(n−1)!` for integer `1 ≤ n ≤ 23`, exact in `f64`.
fn small_factorial<T: Real>(x: T) -> Option<T> {
    if x >= T::one() && x <= T::lit(23.0) && x == x.round() {
        let n = x.to_f64_lossy() as u32;
        Some(T::lit((1..n).fold(1.0_f64, |acc, k| acc * k as f64)))
    } else {
        None
    }
}

/// Γ(x) for real `x`. Poles return `NaN`.
pub fn gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero() / T::zero();
    }
    if let Some(f) = small_factorial(x) {
        return f;
    }
    if x < T::lit(0.5) {
        T::pi() / (sin_pi(x) * gamma(T::one() - x))
    } else {
        ln_gamma_right(x).exp()
    }
}

/// `ln|Γ(x)|` and the sign of Γ(x). Poles return `(+∞, 1)`.
pub fn ln_abs_gamma<T: Real>(x: T) -> (T, T) {
    if is_nonpositive_integer(x) {
        return (T::one() / T::zero(), T::one());
    }
    if x < T::lit(0.5) {
        let s = sin_pi(x);
        let sign = if s < T::zero() { -T::one() } else { T::one() };
        (T::pi().ln() - s.abs().ln() - ln_gamma_right(T::one() - x), sign)
    } else {
        (ln_gamma_right(x), T::one())
    }
}

/// `1/Γ(x)`, an entire function: zero at the poles of Γ, never overflows for
/// large positive `x`.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if let Some(f) = small_factorial(x) {
        return T::one() / f;
    }
    if x < T::lit(0.5) {
        sin_pi(x) * gamma(T::one() - x) / T::pi()
    } else {
        (-ln_gamma_right(x)).exp()
    }
}
