//! Constants of the forcing, Young and coercivity bounds, and the spectral
//! bilinear form they control.

use nalgebra::ComplexField;

use crate::error::{domain, Result};
use crate::scalar::{cx_re, Cx, Real};
use crate::spectral::SpectralField;

/// `Σ_l |l|^p |V̂(l)|`.
fn weighted_l1<T: Real>(v: &SpectralField<T>, p: T) -> T {
    v.lattice().norm_powers::<T>(p).into_iter().zip(v.coeffs()).fold(T::zero(), |acc, (w, c)| acc + w * c.modulus())
}

/// `‖(∇V)^‖_{l¹} = Σ_l |l||V̂(l)|`.
pub fn gradient_l1<T: Real>(v: &SpectralField<T>) -> T {
    weighted_l1(v, T::one())
}

/// `‖((−Δ)^{3/4}V)^‖_{l¹} = Σ_l |l|^{3/2}|V̂(l)|`.
pub fn three_quarter_l1<T: Real>(v: &SpectralField<T>) -> T {
    weighted_l1(v, T::lit(1.5))
}

/// `c(V) = (2π)^{−d/2}(‖(∇V)^‖_{l¹} + ‖((−Δ)^{3/4}V)^‖_{l¹})` of the
/// (truncated) potential.
pub fn potential_constant<T: Real>(v: &SpectralField<T>) -> T {
    (gradient_l1(v) + three_quarter_l1(v)) / T::basis_scale(v.lattice().dim())
}

/// Sharp per-mode constant of `|k|^{2β′} ≤ ε|k|^{2β} + c·|k|^{2β″}`, `|k| ≥ 1`:
/// `c = max_{r ≥ 1} r^p − εr^q` with `p = 2(β′−β″)`, `q = 2(β−β″)`, floored at 0.
pub fn young_constant_for<T: Real>(epsilon: T, beta: T, beta_mid: T, beta_low: T) -> Result<T> {
    if !(epsilon > T::zero()) {
        return Err(domain("epsilon", epsilon, "epsilon > 0"));
    }
    if !(beta_low >= T::zero() && beta_low < beta_mid && beta_mid < beta) {
        return Err(domain("beta", beta, "0 ≤ β″ < β′ < β"));
    }
    let two = T::lit(2.0);
    let p = two * (beta_mid - beta_low);
    let q = two * (beta - beta_low);
    let r_star = (p / (epsilon * q)).powf(T::one() / (q - p)).max(T::one());
    Ok((r_star.powf(p) - epsilon * r_star.powf(q)).max(T::zero()))
}

/// [`young_constant_for`] with `(β′, β″) = (1/2, 0)`: `|k| ≤ ε|k|^{2β} + c(ε)`.
pub fn young_constant<T: Real>(epsilon: T, beta: T) -> Result<T> {
    if !(T::lit(2.0) * beta > T::one()) {
        return Err(domain("beta", beta, "2β > 1"));
    }
    young_constant_for(epsilon, beta, T::lit(0.5), T::zero())
}

/// Constants of `γ₁‖u‖²_{Hᵝ} ≤ B[u,u] + γ₂‖u‖²` for zero-mean `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoercivityConstants<T: Real> {
    pub gamma1: T,
    pub gamma2: T,
    pub epsilon: T,
    /// Young constant `c(ε/c(V))` entering `γ₂`; zero without drift.
    pub young: T,
    pub c_v: T,
    pub diffusion: T,
    pub beta: T,
    /// `γ = K − c(V)` of `γ|u|²_{Hᵝ} ≤ B[u,u] + γ‖u‖²`, when `K > c(V)`.
    pub single: Option<T>,
}

/// `γ₁ = K − ε`, `γ₂ = K − ε + c(V)·c(ε/c(V))`, with `ε = K/2` unless given.
///
/// The Young constant is evaluated at `ε/c(V)` because the drift bound
/// multiplies the per-mode inequality by `c(V)`. For `β = 1/2` only the
/// single-constant branch `K > c(V)` is available and both constants equal
/// `K − c(V)`.
pub fn coercivity_constants<T: Real>(
    diffusion: T,
    c_v: T,
    beta: T,
    epsilon: Option<T>,
) -> Result<CoercivityConstants<T>> {
    if !(diffusion > T::zero()) {
        return Err(domain("K", diffusion, "K > 0"));
    }
    if !(c_v >= T::zero()) || !c_v.is_finite() {
        return Err(domain("c(V)", c_v, "c(V) ≥ 0"));
    }
    let half = T::lit(0.5);
    let single = (diffusion > c_v && beta >= half).then(|| diffusion - c_v);
    if beta == half {
        if let Some(g) = single {
            return Ok(CoercivityConstants {
                gamma1: g,
                gamma2: g,
                epsilon: c_v,
                young: T::zero(),
                c_v,
                diffusion,
                beta,
                single,
            });
        }
    }
    if !(beta > half) {
        return Err(domain("beta", beta, "beta > 1/2, or beta = 1/2 with K > c(V)"));
    }
    let epsilon = epsilon.unwrap_or(diffusion * half);
    if !(epsilon > T::zero() && epsilon < diffusion) {
        return Err(domain("epsilon", epsilon, "0 < epsilon < K"));
    }
    let young = if c_v > T::zero() { young_constant(epsilon / c_v, beta)? } else { T::zero() };
    let gamma1 = diffusion - epsilon;
    Ok(CoercivityConstants { gamma1, gamma2: gamma1 + c_v * young, epsilon, young, c_v, diffusion, beta, single })
}

/// Drift pairing `∫ u ∇V·∇v̄ dx = Σ_j ⟨(u·∂_jV)^, (∂_jv)^⟩`.
pub fn drift_form<T: Real>(u: &SpectralField<T>, v: &SpectralField<T>, potential: &SpectralField<T>) -> Result<Cx<T>> {
    let mut acc = cx_re(T::zero());
    for (dv, dw) in potential.gradient().iter().zip(v.gradient()) {
        acc += u.convolve_product(dv)?.inner(&dw)?;
    }
    Ok(acc)
}

/// `B[u,v] = K⟨(−Δ)^{β/2}u, (−Δ)^{β/2}v⟩ + ∫ u∇V·∇v̄`, real part.
pub fn bilinear_form<T: Real>(
    u: &SpectralField<T>,
    v: &SpectralField<T>,
    diffusion: T,
    beta: T,
    potential: &SpectralField<T>,
) -> Result<T> {
    let diff = u.frac_laplacian(beta).inner(v)?;
    Ok((diff * diffusion + drift_form(u, v, potential)?).re)
}

/// Both sides of the two weak forcing bounds for one pair `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcingBounds<T: Real> {
    /// `|∫ ∇V u·∇v̄|`.
    pub lhs: T,
    /// `(2π)^{−d/2}(‖(∇V)^‖_{l¹}|u|·|v| + ‖((−Δ)^{3/4}V)^‖_{l¹}‖u‖·|v|)`.
    pub split_rhs: T,
    /// `c(V)·|u|·|v|`.
    pub combined_rhs: T,
}

impl<T: Real> ForcingBounds<T> {
    /// Largest amount by which either bound is exceeded (negative when both hold).
    pub fn violation(&self) -> T {
        (self.lhs - self.split_rhs).max(self.lhs - self.combined_rhs)
    }
}

/// Evaluates the forcing bounds, where `|·|` is `‖(−Δ)^{1/4}·‖`, i.e.
/// [`SpectralField::seminorm`] at `1/2`. The combined bound needs zero-mean `u`.
pub fn forcing_bounds<T: Real>(
    u: &SpectralField<T>,
    v: &SpectralField<T>,
    potential: &SpectralField<T>,
) -> Result<ForcingBounds<T>> {
    let half = T::lit(0.5);
    let lhs = drift_form(u, v, potential)?.modulus();
    let su = u.seminorm(half);
    let sv = v.seminorm(half);
    let scale = T::basis_scale(potential.lattice().dim());
    let split_rhs = (gradient_l1(potential) * su * sv + three_quarter_l1(potential) * u.l2_norm() * sv) / scale;
    let combined_rhs = potential_constant(potential) * su * sv;
    Ok(ForcingBounds { lhs, split_rhs, combined_rhs })
}

/// `γ₁‖u‖²_{Hᵝ} − B[u,u] − γ₂‖u‖²`; non-positive when the coercivity bound holds.
pub fn coercivity_violation<T: Real>(
    u: &SpectralField<T>,
    constants: &CoercivityConstants<T>,
    potential: &SpectralField<T>,
) -> Result<T> {
    let l2 = u.l2_norm().powi(2);
    let h_beta = u.seminorm(constants.beta).powi(2) + l2;
    let b = bilinear_form(u, u, constants.diffusion, constants.beta, potential)?;
    Ok(constants.gamma1 * h_beta - b - constants.gamma2 * l2)
}
