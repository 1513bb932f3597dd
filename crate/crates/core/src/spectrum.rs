//! Closed-form bound-state spectrum.
//!
//! With `z = e^{-r/b}` and the centrifugal approximation the radial
//! equation is of hypergeometric type. Polynomial solutions exist when
//!
//! ```text
//! a = sqrt((1-2α)² + 4l(l+1)),   Λ = (a-1)/2
//! ε = [A - (n+1)² - l(l+1) - (2n+1)Λ] / (2(n+1+Λ))
//! E = -(ħ²/2μb²) ε²
//! ```
//!
//! `ε` is kept positive: it is the decay exponent of `z^ε` at `r → ∞`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::state::QuantumState;
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeParams {
    pub a: f64,
    pub lambda: f64,
    pub epsilon: f64,
}

/// `a = sqrt((1-2α)² + 4l(l+1))`.
///
/// Evaluated through `2α - 1` so that `α` and `1 - α` take bit-identical
/// paths whenever `1 - α` is exactly representable.
pub fn shape_param_a(alpha: f64, l: u32) -> f64 {
    let d = 2.0 * alpha - 1.0;
    let lf = l as f64;
    (d * d + 4.0 * lf * (lf + 1.0)).sqrt()
}

/// `Λ = (a - 1)/2`; equals `l` for `α ∈ {0, 1}`.
pub fn lambda_param(alpha: f64, l: u32) -> f64 {
    0.5 * (shape_param_a(alpha, l) - 1.0)
}

fn critical_from_lambda(n: u32, l: u32, lambda: f64) -> f64 {
    let n1 = n as f64 + 1.0;
    let lf = l as f64;
    n1 * n1 + lf * (lf + 1.0) + (2.0 * n as f64 + 1.0) * lambda
}

/// Critical coupling `A_c` at which level `(n, l)` reaches zero binding.
pub fn critical_coupling(n: u32, l: u32, alpha: f64) -> f64 {
    critical_from_lambda(n, l, lambda_param(alpha, l))
}

/// Signed `ε` without the bound-state check; negative below threshold.
pub fn epsilon_signed(s: QuantumState, p: &PotentialParams) -> f64 {
    let lambda = lambda_param(p.alpha, s.l);
    (p.strength - critical_from_lambda(s.n, s.l, lambda)) / (2.0 * (s.n as f64 + 1.0 + lambda))
}

/// Whether `(n, l)` is bound, i.e. `A > A_c` strictly.
pub fn is_bound(s: QuantumState, p: &PotentialParams) -> bool {
    p.strength > critical_coupling(s.n, s.l, p.alpha)
}

fn require_bound(s: QuantumState, p: &PotentialParams) -> Result<()> {
    let critical = critical_coupling(s.n, s.l, p.alpha);
    if p.strength > critical {
        Ok(())
    } else {
        Err(Error::NoBoundState { n: s.n, l: s.l, strength: p.strength, critical })
    }
}

/// Dimensionless energy parameter `ε = sqrt(-2μb²E/ħ²) > 0`.
pub fn epsilon_nl(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    require_bound(s, p)?;
    Ok(epsilon_signed(s, p))
}

pub fn shape_params(s: QuantumState, p: &PotentialParams) -> Result<ShapeParams> {
    let epsilon = epsilon_nl(s, p)?;
    let a = shape_param_a(p.alpha, s.l);
    Ok(ShapeParams { a, lambda: 0.5 * (a - 1.0), epsilon })
}

/// Energy level `E_nl`, strictly negative.
pub fn energy_nl(s: QuantumState, p: &PotentialParams, u: &UnitSystem) -> Result<f64> {
    let eps = epsilon_nl(s, p)?;
    Ok(-u.energy_scale(p.range) * eps * eps)
}

/// `-(ħ²/2μb²) ε²` evaluated for any `A`, including at and below threshold.
pub fn level_formula(s: QuantumState, p: &PotentialParams, u: &UnitSystem) -> f64 {
    let eps = epsilon_signed(s, p);
    -u.energy_scale(p.range) * eps * eps
}

/// Number of `n ∈ [0, n_max]` with a bound level at orbital number `l`.
pub fn count_bound_states(p: &PotentialParams, l: u32, n_max: u32) -> u32 {
    (0..=n_max).filter(|&n| is_bound(QuantumState::new(n, l), p)).count() as u32
}

/// `λ - λ_n` evaluated at a given `ε`, where
/// `λ = A - l(l+1) - (1+a)(1/2 + ε)` and `λ_n = n(1 + n + a + 2ε)`.
pub fn quantization_residual_at(s: QuantumState, p: &PotentialParams, epsilon: f64) -> f64 {
    let a = shape_param_a(p.alpha, s.l);
    let n = s.n as f64;
    let lambda = p.strength - s.l_term() - (1.0 + a) * (0.5 + epsilon);
    let lambda_n = n * (1.0 + n + a + 2.0 * epsilon);
    lambda - lambda_n
}

/// Quantization residual at the closed-form `ε`; zero up to round-off.
pub fn quantization_residual(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    let eps = epsilon_nl(s, p)?;
    Ok(quantization_residual_at(s, p, eps))
}

/// Hulthén level for `V(r) = -Ze² δ e^{-δr}/(1 - e^{-δr})`.
///
/// `strength` is `Ze²` in energy × length and `delta = 1/b`. The
/// Manning-Rosen strength follows from `A ħ²/(2μb²) = Ze² δ`.
pub fn hulthen_energy(s: QuantumState, strength: f64, delta: f64, u: &UnitSystem) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!("screening parameter must be positive, got {delta}")));
    }
    let h = u.hbar2_over_2mu();
    let a = strength / (delta * h);
    let big_n = s.principal() as f64;
    let critical = big_n * big_n;
    if !(a > critical) {
        return Err(Error::NoBoundState { n: s.n, l: s.l, strength: a, critical });
    }
    let gap = a - critical;
    Ok(-h * delta * delta * gap * gap / (4.0 * critical))
}

/// Coulomb level `-ε₀/(n+l+1)²` with `ε₀ = Z² ħ²/(2μ a₀²)`, `a₀ = ħ²/(μe²)`.
pub fn coulomb_limit(s: QuantumState, z: f64, u: &UnitSystem) -> f64 {
    let e2 = u.coulomb;
    let eps0 = z * z * e2 * e2 / (4.0 * u.hbar2_over_2mu());
    let big_n = s.principal() as f64;
    -eps0 / (big_n * big_n)
}
