//! Two-parameter Mittag-Leffler function `E_{α,b}(z) = Σ_k z^k / Γ(αk + b)`.
//!
//! Evaluation picks, in order: an elementary closed form (`α = 1`,
//! `b ∈ {1, 2}`), the Taylor series with a running error bound (`|z| ≤ 5`), the
//! optimally truncated algebraic expansion on the negative real axis
//! (`z ≤ −5`, `α ≤ 0.95`), and finally inversion of the Laplace transform
//! `s^{α−b}/(s^α − z)` on a parabolic Hankel contour with the pole residue
//! added when the pole lies to the right of the contour. A branch is accepted
//! only when its error estimate is within tolerance.

use nalgebra::ComplexField;

use crate::error::{domain, Error, Result};
use crate::scalar::{cis, cx, cx_re, Cx, Real};
use crate::special::{gamma, ln_abs_gamma, rgamma};

/// Largest admissible `|z|`.
pub const MAX_ARGUMENT: f64 = 1e8;

const SERIES_RADIUS: f64 = 5.0;
const ASYMPTOTIC_MAX_ALPHA: f64 = 0.95;
const SERIES_MAX_TERMS: usize = 4000;
const ASYMPTOTIC_MAX_TERMS: usize = 400;

/// Parabolic contour `s(θ) = N(a − cθ² + i·dθ)`, θ ∈ [−π, π].
const PARABOLA: (f64, f64, f64) = (0.1309, 0.1194, 0.25);
const CONTOUR_SIZES: [(usize, usize); 4] = [(32, 44), (48, 64), (64, 88), (24, 36)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlMethod {
    Elementary,
    Series,
    Asymptotic,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlEvaluation<T: Real> {
    pub alpha: T,
    pub b: T,
    pub value: Cx<T>,
    pub method: MlMethod,
    pub est_error: T,
}

/// Acceptance tolerance: `1e-10` absolute for `|E| ≤ 1`, relative above.
pub fn tolerance<T: Real>() -> T {
    T::lit(1e-10).max(T::eps() * T::lit(1e4))
}

fn accepted<T: Real>(value: Cx<T>, err: T) -> bool {
    let scale = T::one().max(value.modulus());
    value.re.is_finite() && value.im.is_finite() && err.is_finite() && err <= tolerance::<T>() * scale
}

/// `E_{α,b}(z)` for `α ∈ (0, 1]`, `b > 0`, `|z| ≤ 1e8`.
pub fn ml<T: Real>(alpha: T, b: T, z: Cx<T>) -> Result<MlEvaluation<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(domain("alpha", alpha, "0 < alpha ≤ 1"));
    }
    if !(b > T::zero()) || !b.is_finite() {
        return Err(domain("b", b, "b > 0"));
    }
    let radius = z.modulus();
    if !(radius <= T::lit(MAX_ARGUMENT)) {
        return Err(domain("|z|", radius, "|z| ≤ 1e8"));
    }
    let done = |value, method, est_error| MlEvaluation { alpha, b, value, method, est_error };

    if radius == T::zero() {
        return Ok(done(cx_re(rgamma(b)), MlMethod::Series, T::eps() * rgamma(b).abs()));
    }
    if alpha == T::one() {
        if b == T::one() {
            let v = ComplexField::exp(z);
            return Ok(done(v, MlMethod::Elementary, T::lit(4.0) * T::eps() * v.modulus()));
        }
        if b == T::lit(2.0) && radius >= T::lit(0.5) {
            let v = (ComplexField::exp(z) - cx_re(T::one())) / z;
            let err = T::lit(4.0) * T::eps() * (v.modulus() + T::one() / radius);
            return Ok(done(v, MlMethod::Elementary, err));
        }
    }

    let mut best: Option<(Cx<T>, T, MlMethod)> = None;
    let mut consider = |value: Cx<T>, err: T, method: MlMethod| -> bool {
        let ok = accepted(value, err);
        if best.is_none_or(|(_, e, _)| err < e || !e.is_finite()) {
            best = Some((value, err, method));
        }
        ok
    };

    if radius <= T::lit(SERIES_RADIUS) {
        let (v, e) = series(alpha, b, z);
        if consider(v, e, MlMethod::Series) {
            return Ok(done(v, MlMethod::Series, e));
        }
    }
    let on_negative_axis = z.re < T::zero() && z.im.abs() <= T::eps() * radius;
    if on_negative_axis && z.re <= -T::lit(SERIES_RADIUS) && alpha <= T::lit(ASYMPTOTIC_MAX_ALPHA) {
        let (v, e) = asymptotic_negative(alpha, b, -z.re);
        if consider(cx_re(v), e, MlMethod::Asymptotic) {
            return Ok(done(cx_re(v), MlMethod::Asymptotic, e));
        }
    }
    for &(n1, n2) in &CONTOUR_SIZES {
        let i1 = hankel_inversion(alpha, b, z, n1);
        let i2 = hankel_inversion(alpha, b, z, n2);
        let err = (i1 - i2).modulus() + T::lit(16.0) * T::eps() * i2.modulus();
        if consider(i2, err, MlMethod::Integral) {
            return Ok(done(i2, MlMethod::Integral, err));
        }
    }
    let est_error = best.map_or(T::one() / T::zero(), |(_, e, _)| e);
    Err(Error::NonConvergence {
        alpha: alpha.to_f64_lossy(),
        b: b.to_f64_lossy(),
        z_re: z.re.to_f64_lossy(),
        z_im: z.im.to_f64_lossy(),
        est_error: est_error.to_f64_lossy(),
    })
}

/// Real-argument convenience wrapper returning only the value.
pub fn ml_real<T: Real>(alpha: T, b: T, x: T) -> Result<T> {
    ml(alpha, b, cx_re(x)).map(|e| e.value.re)
}

/// Taylor series with a running error bound (rounding plus geometric tail).
fn series<T: Real>(alpha: T, b: T, z: Cx<T>) -> (Cx<T>, T) {
    let ln_r = z.modulus().ln();
    let arg = z.argument();
    let eps = T::eps();
    let mut sum = cx_re(T::zero());
    let mut round = T::zero();
    let mut prev = T::zero();
    for k in 0..SERIES_MAX_TERMS {
        let kt = T::from_usize_lossy(k);
        let (lg, _) = ln_abs_gamma(alpha * kt + b);
        let log_mag = kt * ln_r - lg;
        let mag = log_mag.exp();
        if !mag.is_finite() {
            return (sum, T::one() / T::zero());
        }
        sum += cis(kt * arg) * mag;
        round += mag * eps * (T::lit(8.0) + log_mag.abs() + lg.abs());
        if k > 2 && mag < prev {
            let ratio = mag / prev;
            if ratio < T::one() {
                let tail = mag * ratio / (T::one() - ratio);
                if tail <= eps * sum.modulus().max(T::lit(1e-300)) || mag == T::zero() {
                    return (sum, round + tail);
                }
            }
        }
        prev = mag;
    }
    (sum, T::one() / T::zero())
}

/// `−Σ_k z^{−k}/Γ(b − αk)` at `z = −x`, truncated before the smallest term.
fn asymptotic_negative<T: Real>(alpha: T, b: T, x: T) -> (T, T) {
    let ln_x = x.ln();
    let eps = T::eps();
    let mut terms: Vec<T> = Vec::new();
    let mut smallest_at = 0usize;
    let mut smallest = T::one() / T::zero();
    let mut rising = 0usize;
    for k in 1..=ASYMPTOTIC_MAX_TERMS {
        let kt = T::from_usize_lossy(k);
        let arg = b - alpha * kt;
        let (lg, sign) = ln_abs_gamma(arg);
        let mag = (-kt * ln_x - lg).exp();
        // z^{-k} = (−1)^k x^{-k}; the leading minus sign of the expansion.
        let parity = if k % 2 == 0 { -T::one() } else { T::one() };
        terms.push(parity * sign * mag);
        if mag == T::zero() {
            continue;
        }
        if mag < smallest {
            smallest = mag;
            smallest_at = k;
            rising = 0;
        } else {
            rising += 1;
            if rising >= 3 {
                break;
            }
        }
    }
    if smallest_at == 0 {
        return (T::zero(), T::one() / T::zero());
    }
    let kept = &terms[..smallest_at];
    let value = kept.iter().fold(T::zero(), |acc, &t| acc + t);
    let abs_sum = kept.iter().fold(T::zero(), |acc, &t| acc + t.abs());
    let omitted = terms[smallest_at..].iter().take(2).fold(smallest, |acc, &t| acc.max(t.abs()));
    (value, omitted + T::lit(8.0) * eps * abs_sum)
}

/// Trapezoidal inversion of `s^{α−b}/(s^α − z)` at `t = 1` on a parabolic
/// contour with `n` nodes.
///
/// When `s^α = z` has a root `p` on the principal sheet, the quadrature is
/// applied to `e^s F(s) − r·e^{s−p}/(s − p)` (analytic at `p`), and the
/// residue `r = p^{1−b}e^p/α` is added back. The subtracted term integrates
/// to `r` when `p` is enclosed and to zero otherwise, so the result is
/// `r + ∫(…)` in both cases.
fn hankel_inversion<T: Real>(alpha: T, b: T, z: Cx<T>, n: usize) -> Cx<T> {
    let (pa, pc, pd) = (T::lit(PARABOLA.0), T::lit(PARABOLA.1), T::lit(PARABOLA.2));
    let nt = T::from_usize_lossy(n);
    let h = T::two_pi() / nt;

    let arg = z.argument().abs();
    let has_pole = if alpha == T::one() { arg < T::pi() } else { arg < alpha * T::pi() };
    // Pole p and r·e^{−p} = p^{1−b}/α.
    let pole = has_pole.then(|| {
        let p = ComplexField::exp(ComplexField::ln(z) / alpha);
        let coef = ComplexField::exp(ComplexField::ln(p) * (T::one() - b)) / alpha;
        (p, coef)
    });

    let mut acc = cx_re(T::zero());
    for j in 0..n {
        let theta = -T::pi() + (T::from_usize_lossy(j) + T::lit(0.5)) * h;
        let s = cx(nt * (pa - pc * theta * theta), nt * pd * theta);
        let ds = cx(-T::lit(2.0) * nt * pc * theta, nt * pd);
        let ln_s = ComplexField::ln(s);
        let s_alpha = ComplexField::exp(ln_s * alpha);
        let s_num = ComplexField::exp(ln_s * (alpha - b));
        let mut f = s_num / (s_alpha - z);
        if let Some((p, coef)) = pole {
            f -= coef / (s - p);
        }
        acc += ComplexField::exp(s) * f * ds;
    }
    // (1/2πi)·h·Σ = Σ/(n·i)
    let mut value = acc / cx(T::zero(), nt);
    if let Some((p, coef)) = pole {
        value += coef * ComplexField::exp(p);
    }
    value
}

/// `1/Γ(b)`, the value at the origin.
pub fn ml_at_zero<T: Real>(b: T) -> T {
    T::one() / gamma(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(alpha: f64, b: f64, z: f64) -> f64 {
        ml(alpha, b, cx_re(z)).unwrap().value.re
    }

    #[test]
    fn exponential_special_case() {
        assert!((val(1.0, 1.0, 1.0) - std::f64::consts::E).abs() < 1e-14);
        assert!((val(1.0, 1.0, -30.0) / (-30.0_f64).exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn value_at_zero() {
        for b in [0.5, 1.0, 1.8, 3.0] {
            let e = ml(0.7, b, cx_re(0.0)).unwrap();
            assert!((e.value.re - ml_at_zero(b)).abs() < 1e-15);
        }
        assert_eq!(val(0.3, 1.0, 0.0), 1.0);
    }

    #[test]
    fn e_one_two_closed_form() {
        let want = ((2.0_f64).exp() - 1.0) / 2.0;
        assert!((val(1.0, 2.0, 2.0) - want).abs() < 1e-13);
        assert!((want - 3.194528).abs() < 1e-6);
        // Small arguments go through the series.
        let z = 0.1_f64;
        let e = ml(1.0, 2.0, cx_re(z)).unwrap();
        assert_eq!(e.method, MlMethod::Series);
        assert!((e.value.re - z.exp_m1() / z).abs() < 1e-15);
    }

    #[test]
    fn half_order_at_minus_one() {
        assert!((val(0.5, 1.0, -1.0) - 0.427584).abs() < 5e-7);
    }

    #[test]
    fn branches_agree_where_they_overlap() {
        // Series and contour on the same argument.
        for &(alpha, b, z) in &[(0.8, 1.0, -3.0), (0.6, 1.6, 2.0), (0.9, 1.9, -4.5)] {
            let s = series(alpha, b, cx_re(z)).0;
            let i = hankel_inversion(alpha, b, cx_re(z), 64);
            assert!((s - i).norm() < 1e-12, "alpha={alpha} b={b} z={z}: {s} vs {i}");
        }
        // Asymptotic expansion and contour far out on the negative axis.
        for &(alpha, b, x) in &[(0.5, 1.0, 40.0), (0.7, 1.7, 200.0), (0.3, 1.0, 1e4)] {
            let (a, err) = asymptotic_negative(alpha, b, x);
            let i = hankel_inversion(alpha, b, cx_re(-x), 64).re;
            assert!(err < 1e-11, "alpha={alpha} x={x}: err {err}");
            assert!((a - i).abs() < 1e-11, "alpha={alpha} x={x}: {a} vs {i}");
        }
    }

    #[test]
    fn complex_arguments_with_residue() {
        // E_{1,1.5} has no elementary form; cross-check series against contour
        // for an argument whose pole lies right of the contour.
        let z = Cx::new(3.0, 2.0);
        let s = series(1.0, 1.5, z).0;
        let e = ml(1.0, 1.5, z * 2.0).unwrap();
        assert!(e.method == MlMethod::Integral);
        let i = hankel_inversion(1.0, 1.5, z, 48);
        assert!((s - i).norm() < 1e-11 * s.norm());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(ml(1.5, 1.0, cx_re(1.0)), Err(Error::Domain { name: "alpha", .. })));
        assert!(matches!(ml(0.0, 1.0, cx_re(1.0)), Err(Error::Domain { .. })));
        assert!(matches!(ml(0.5, 0.0, cx_re(1.0)), Err(Error::Domain { name: "b", .. })));
        assert!(matches!(ml(0.5, 1.0, cx_re(-2e8)), Err(Error::Domain { .. })));
    }

    #[test]
    fn huge_positive_argument_does_not_pretend() {
        // e^{(1e4)^2} overflows; must be reported, not returned as garbage.
        assert!(matches!(ml(0.5, 1.0, cx_re(1e4)), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn monotone_on_negative_axis() {
        for alpha in [0.3, 0.5, 0.8, 1.0] {
            let mut prev = 0.0;
            for i in 0..=550 {
                let x = -50.0 + 0.1 * i as f64;
                let v = val(alpha, 1.0, x);
                assert!(v > 0.0, "alpha={alpha} x={x}: {v}");
                assert!(v >= prev, "alpha={alpha} x={x}");
                prev = v;
            }
        }
    }
}
