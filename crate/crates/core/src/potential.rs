//! The Manning-Rosen potential
//!
//! ```text
//! V(r) = (ħ²/2μb²) [ -A y + α(α-1) y² ],   y = e^{-r/b} / (1 - e^{-r/b})
//! ```
//!
//! with dimensionless strength `A`, shape parameter `α` and range `b`.
//! The potential is invariant under `α → 1 - α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Dimensionless strength `A`.
    pub strength: f64,
    /// Dimensionless shape parameter `α`.
    pub alpha: f64,
    /// Range `b`, in the length unit of the active [`UnitSystem`].
    pub range: f64,
}

impl PotentialParams {
    pub fn new(strength: f64, alpha: f64, range: f64) -> Result<Self> {
        if !(range > 0.0 && range.is_finite()) {
            return Err(Error::domain(format!("range b must be positive and finite, got {range}")));
        }
        if !strength.is_finite() || !alpha.is_finite() {
            return Err(Error::domain("A and alpha must be finite"));
        }
        Ok(PotentialParams { strength, alpha, range })
    }

    /// Parameters with `A = 2b`, the convention used for the published tables.
    pub fn with_a_rule_2b(alpha: f64, range: f64) -> Result<Self> {
        PotentialParams::new(2.0 * range, alpha, range)
    }

    /// `α(α - 1)`, the coefficient of the repulsive term.
    pub fn repulsion(&self) -> f64 {
        self.alpha * (self.alpha - 1.0)
    }

    /// Returns the same potential with `α` replaced by `1 - α`.
    pub fn mirrored(&self) -> Self {
        PotentialParams { alpha: 1.0 - self.alpha, ..*self }
    }
}

/// Treatment of the centrifugal barrier `l(l+1)/r²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centrifugal {
    Exact,
    /// `1/r² ≈ (1/b²) e^{-r/b} / (1 - e^{-r/b})²`
    Approximate,
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && !r.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius must be strictly positive, got {r}")))
    }
}

/// `e^{-x}/(1-e^{-x}) = 1/(e^x - 1)`, accurate for small `x`.
#[inline]
pub(crate) fn screening_ratio(x: f64) -> f64 {
    1.0 / x.exp_m1()
}

/// Potential energy at `r`.
pub fn potential_v(r: f64, p: &PotentialParams, u: &UnitSystem) -> Result<f64> {
    check_radius(r)?;
    Ok(potential_unchecked(r, p, u))
}

#[inline]
pub(crate) fn potential_unchecked(r: f64, p: &PotentialParams, u: &UnitSystem) -> f64 {
    let y = screening_ratio(r / p.range);
    u.energy_scale(p.range) * (-p.strength * y + p.repulsion() * y * y)
}

/// The same potential in the rational form
/// `-(C e^{-r/b} + D e^{-2r/b}) / (1 - e^{-r/b})²` with `C = A`,
/// `D = -A - α(α-1)`.
pub fn potential_v_rational(r: f64, p: &PotentialParams, u: &UnitSystem) -> Result<f64> {
    check_radius(r)?;
    let c = p.strength;
    let d = -p.strength - p.repulsion();
    let z = (-r / p.range).exp();
    let one_minus_z = -(-r / p.range).exp_m1();
    Ok(-u.energy_scale(p.range) * (c * z + d * z * z) / (one_minus_z * one_minus_z))
}

fn check_minimum_domain(p: &PotentialParams) -> Result<f64> {
    let c = p.repulsion();
    let arg = 1.0 + 2.0 * c / p.strength;
    if !(arg > 0.0) {
        return Err(Error::NoInteriorMinimum(format!(
            "1 + 2α(α-1)/A = {arg} must be positive (A = {}, α = {})",
            p.strength, p.alpha
        )));
    }
    let r0 = p.range * arg.ln();
    if !(r0 > 0.0) {
        return Err(Error::NoInteriorMinimum(format!(
            "r0 = b ln(1 + 2α(α-1)/A) = {r0} is not positive; requires α(α-1)/A > 0 (A = {}, α = {})",
            p.strength, p.alpha
        )));
    }
    Ok(r0)
}

/// Location and depth of the potential minimum.
pub fn potential_minimum(p: &PotentialParams, u: &UnitSystem) -> Result<(f64, f64)> {
    let r0 = check_minimum_domain(p)?;
    let v_min = -u.energy_scale(p.range) * p.strength * p.strength / (4.0 * p.repulsion());
    Ok((r0, v_min))
}

/// Curvature `d²V/dr²` at the minimum, in energy per length².
///
/// `(ħ²/2μ) A² [A + 2α(α-1)]² / (8 b⁴ α³(α-1)³)`
pub fn force_constant(p: &PotentialParams, u: &UnitSystem) -> Result<f64> {
    check_minimum_domain(p)?;
    let a = p.strength;
    let c = p.repulsion();
    let b4 = p.range.powi(4);
    Ok(u.hbar2_over_2mu() * a * a * (a + 2.0 * c).powi(2) / (8.0 * b4 * c.powi(3)))
}

/// Centrifugal energy `(ħ²/2μ) l(l+1) · g(r)` with `g = 1/r²` or its
/// exponential approximation.
pub fn centrifugal_term(r: f64, range: f64, l: u32, mode: Centrifugal, u: &UnitSystem) -> Result<f64> {
    check_radius(r)?;
    Ok(centrifugal_unchecked(r, range, l, mode, u))
}

#[inline]
pub(crate) fn centrifugal_unchecked(r: f64, range: f64, l: u32, mode: Centrifugal, u: &UnitSystem) -> f64 {
    let lf = l as f64;
    let ll = lf * (lf + 1.0);
    if ll == 0.0 {
        return 0.0;
    }
    let inv_r2 = match mode {
        Centrifugal::Exact => 1.0 / (r * r),
        Centrifugal::Approximate => {
            let y = screening_ratio(r / range);
            y * (1.0 + y) / (range * range)
        }
    };
    u.hbar2_over_2mu() * ll * inv_r2
}

/// Effective radial potential `V(r) + centrifugal(r)` in energy units.
pub fn effective_potential(
    r: f64,
    p: &PotentialParams,
    l: u32,
    mode: Centrifugal,
    u: &UnitSystem,
) -> Result<f64> {
    check_radius(r)?;
    Ok(potential_unchecked(r, p, u) + centrifugal_unchecked(r, p.range, l, mode, u))
}
