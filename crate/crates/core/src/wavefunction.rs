//! Normalized radial wavefunctions.
//!
//! ```text
//! R(r) = N z^ε (1-z)^{1+Λ} P_n^{(2ε, 2Λ+1)}(1-2z),   z = e^{-r/b}
//! ```
//!
//! The norm integral `s = ∫ R²/N² dr = b ∫₀¹ z^{2ε-1} (1-z)^{2Λ+2} P² dz`
//! is evaluated two ways: by the closed double sum over the monomial
//! expansion of both Jacobi factors, and by adaptive quadrature.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::quadrature::{integrate, QuadOptions, QuadResult};
use crate::special::{compensated_sum, jacobi_gamma_form, ln_binomial, ln_gamma, JacobiParams};
use crate::spectrum::{shape_params, ShapeParams};
use crate::state::QuantumState;
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    ClosedForm,
    Quadrature,
}

/// A sampled, normalized radial wavefunction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialFunction {
    pub state: QuantumState,
    pub params: PotentialParams,
    pub shape: ShapeParams,
    pub length_unit: String,
    pub norm_const: f64,
    pub norm_method: NormMethod,
    pub r: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialFunction {
    /// Sign changes between consecutive nonzero samples.
    pub fn node_count(&self) -> usize {
        count_sign_changes(&self.values)
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.r.iter().copied().zip(self.values.iter().copied())
    }

    /// Two columns `r,R`, full precision, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,R\n");
        for (r, v) in self.samples() {
            let _ = writeln!(out, "{r:e},{v:e}");
        }
        out
    }
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

fn jacobi_for(s: QuantumState, shape: &ShapeParams) -> Result<JacobiParams> {
    JacobiParams::new(s.n, 2.0 * shape.epsilon, 2.0 * shape.lambda + 1.0)
}

fn unnormalized_with(r: f64, range: f64, shape: &ShapeParams, j: &JacobiParams) -> f64 {
    let x = r / range;
    let z = (-x).exp();
    let one_minus_z = -(-x).exp_m1();
    (-shape.epsilon * x).exp() * one_minus_z.powf(1.0 + shape.lambda) * jacobi_gamma_form(j, z)
}

/// `z^ε (1-z)^{1+Λ} P_n^{(2ε,2Λ+1)}(1-2z)` at radius `r`.
pub fn radial_unnormalized(s: QuantumState, p: &PotentialParams, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
    }
    let shape = shape_params(s, p)?;
    let j = jacobi_for(s, &shape)?;
    Ok(unnormalized_with(r, p.range, &shape, &j))
}

// Shared body of the closed double sum. With `with_divisor = false` the
// `1/(n+2ε+r-p)` factor of the Beta integral is dropped.
//
// Every Gamma ratio inside the sum collapses to a rising factorial, so
// the terms are rational in ε and Λ and only the common prefactor needs
// log-gamma. This matters: the terms cancel by up to ~1e5 for n ≈ 4.
fn norm_sum(s: QuantumState, p: &PotentialParams, with_divisor: bool) -> Result<f64> {
    let shape = shape_params(s, p)?;
    let n = s.n;
    let nf = n as f64;
    let e2 = 2.0 * shape.epsilon;
    let lam2 = 2.0 * shape.lambda;

    let ln_pref = p.range.ln() + ln_gamma(nf + lam2 + 2.0) + 2.0 * ln_gamma(nf + e2 + 1.0)
        - ln_gamma(nf + e2 + lam2 + 2.0)
        - ln_gamma(e2 + 1.0)
        - 2.0 * ln_gamma(nf + 1.0);

    let mut terms = Vec::with_capacity(((n + 1) * (n + 1)) as usize);
    for pi in 0..=n {
        let pf = pi as f64;
        let bp = ln_binomial(nf, pi).exp();
        let mut rising = 1.0;
        for ri in 0..=n {
            let rf = ri as f64;
            if ri > 0 {
                rising *= (nf + e2 - pf + rf) / (e2 + rf);
            }
            let sign = if (pi + ri) % 2 == 0 { 1.0 } else { -1.0 };
            let br = ln_binomial(nf, ri).exp();
            let mut t = sign * bp * br * (pf + lam2 + 2.0) * rising / (nf + e2 + lam2 + rf + 2.0);
            if with_divisor {
                t /= nf + e2 + rf - pf;
            }
            terms.push(t);
        }
    }
    let sum = compensated_sum(terms);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * sum * ln_pref.exp())
}

/// Norm integral `s = b ∫₀¹ z^{2ε-1}(1-z)^{2Λ+2} P² dz` from the closed double sum.
pub fn norm_integral_closed(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    norm_sum(s, p, true)
}

/// The same double sum with the Beta integral's `1/(n+2ε+r-p)` left out.
///
/// This is the form that appears in some printed derivations. It is not a
/// valid norm; at `n = 0` it exceeds the true value by exactly `2ε`.
pub fn norm_integral_uncorrected(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    norm_sum(s, p, false)
}

/// `N = 1/sqrt(s)` from the closed double sum.
pub fn normalization_closed(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    let norm = norm_integral_closed(s, p)?;
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::NonPositiveNorm(norm));
    }
    Ok(norm.sqrt().recip())
}

/// Norm integral by adaptive Gauss-Kronrod in `z`.
///
/// For `2ε < 1` the endpoint singularity `z^{2ε-1}` is removed with
/// `t = z^{2ε}`, which turns the weight into `dt/(2ε)`.
pub fn norm_integral_quadrature(s: QuantumState, p: &PotentialParams) -> Result<QuadResult> {
    let shape = shape_params(s, p)?;
    let j = jacobi_for(s, &shape)?;
    let e2 = 2.0 * shape.epsilon;
    let pow_1mz = 2.0 * shape.lambda + 2.0;
    let opts = QuadOptions { rel_tol: 1e-13, abs_tol: 0.0, max_subdivisions: 8000 };
    let mut res = if e2 >= 1.0 {
        integrate(
            |z| {
                let pz = jacobi_gamma_form(&j, z);
                z.powf(e2 - 1.0) * (1.0 - z).powf(pow_1mz) * pz * pz
            },
            0.0,
            1.0,
            opts,
        )?
    } else {
        let inv = e2.recip();
        let mut r = integrate(
            |t| {
                let z = t.powf(inv);
                let pz = jacobi_gamma_form(&j, z);
                (1.0 - z).powf(pow_1mz) * pz * pz
            },
            0.0,
            1.0,
            opts,
        )?;
        r.value *= inv;
        r.error *= inv;
        r
    };
    res.value *= p.range;
    res.error *= p.range;
    Ok(res)
}

/// `N = 1/sqrt(s)` from quadrature.
pub fn normalization_quadrature(s: QuantumState, p: &PotentialParams) -> Result<f64> {
    let norm = norm_integral_quadrature(s, p)?.value;
    if !(norm > 0.0) {
        return Err(Error::NonPositiveNorm(norm));
    }
    Ok(norm.sqrt().recip())
}

/// Log-spaced grid from `b·1e-4` to `b·max(40, 10/ε)`, 2000 points.
pub fn default_grid(s: QuantumState, p: &PotentialParams) -> Result<Vec<f64>> {
    let shape = shape_params(s, p)?;
    let lo = p.range * 1e-4;
    let hi = p.range * f64::max(40.0, 10.0 / shape.epsilon);
    Ok(log_grid(lo, hi, 2000))
}

pub(crate) fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let last = (count - 1) as f64;
    (0..count).map(|i| (a + (b - a) * i as f64 / last).exp()).collect()
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    if grid.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(Error::domain("grid points must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("grid must be strictly ascending"));
    }
    Ok(())
}

/// Sample the normalized `R_nl` on `grid`.
///
/// Uses the closed-form constant and falls back to quadrature if the
/// double sum comes out non-positive.
pub fn radial_wavefunction(
    s: QuantumState,
    p: &PotentialParams,
    u: &UnitSystem,
    grid: &[f64],
) -> Result<RadialFunction> {
    match normalization_closed(s, p) {
        Ok(c) => sample(s, p, u, grid, c, NormMethod::ClosedForm),
        Err(Error::NonPositiveNorm(_)) => {
            radial_wavefunction_with(s, p, u, grid, NormMethod::Quadrature)
        }
        Err(e) => Err(e),
    }
}

/// As [`radial_wavefunction`] with an explicit normalization method.
pub fn radial_wavefunction_with(
    s: QuantumState,
    p: &PotentialParams,
    u: &UnitSystem,
    grid: &[f64],
    method: NormMethod,
) -> Result<RadialFunction> {
    let c = match method {
        NormMethod::ClosedForm => normalization_closed(s, p)?,
        NormMethod::Quadrature => normalization_quadrature(s, p)?,
    };
    sample(s, p, u, grid, c, method)
}

fn sample(
    s: QuantumState,
    p: &PotentialParams,
    u: &UnitSystem,
    grid: &[f64],
    norm_const: f64,
    norm_method: NormMethod,
) -> Result<RadialFunction> {
    validate_grid(grid)?;
    let shape = shape_params(s, p)?;
    let j = jacobi_for(s, &shape)?;
    let values = grid.iter().map(|&r| norm_const * unnormalized_with(r, p.range, &shape, &j)).collect();
    Ok(RadialFunction {
        state: s,
        params: *p,
        shape,
        length_unit: u.length_unit().to_string(),
        norm_const,
        norm_method,
        r: grid.to_vec(),
        values,
    })
}
