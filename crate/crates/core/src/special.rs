//! Log-gamma, Jacobi polynomials in two explicit series forms, and the
//! Beta-type integral that appears in the normalization sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(ln_gamma(x))
    } else {
        Err(Error::domain(format!("log_gamma requires x > 0, got {x}")))
    }
}

#[inline]
pub(crate) fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `ln C(x, k)` for real `x` with `x - k + 1 > 0`.
pub(crate) fn ln_binomial(x: f64, k: u32) -> f64 {
    ln_gamma(x + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma(x - k as f64 + 1.0)
}

/// Sums values in descending order of magnitude with Neumaier compensation.
pub(crate) fn compensated_sum(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Degree and superscripts of `P_n^{(ρ, ν)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub n: u32,
    pub rho: f64,
    pub nu: f64,
}

impl JacobiParams {
    pub fn new(n: u32, rho: f64, nu: f64) -> Result<Self> {
        if !(rho > -1.0 && nu > -1.0) || !rho.is_finite() || !nu.is_finite() {
            return Err(Error::domain(format!(
                "Jacobi superscripts must exceed -1, got rho = {rho}, nu = {nu}"
            )));
        }
        Ok(JacobiParams { n, rho, nu })
    }
}

/// `P_n^{(ρ,ν)}(ξ)` from the binomial double-product sum
///
/// ```text
/// 2^{-n} Σ_p (-1)^{n-p} C(n+ρ, p) C(n+ν, n-p) (1-ξ)^{n-p} (1+ξ)^p
/// ```
pub fn jacobi_sum_form(j: &JacobiParams, xi: f64) -> f64 {
    let n = j.n;
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let lower = 0.5 * (1.0 - xi);
    let upper = 0.5 * (1.0 + xi);
    let terms = (0..=n)
        .map(|p| {
            let sign = if (n - p).is_multiple_of(2) { 1.0 } else { -1.0 };
            let coeff = (ln_binomial(nf + j.rho, p) + ln_binomial(nf + j.nu, n - p)).exp();
            sign * coeff * lower.powi((n - p) as i32) * upper.powi(p as i32)
        })
        .collect();
    compensated_sum(terms)
}

/// `P_n^{(ρ,ν)}(1 - 2z)` from the ascending series in `z`
///
/// ```text
/// Γ(n+ρ+1)/Γ(n+ρ+ν+1) Σ_r (-1)^r Γ(n+ρ+ν+r+1) / (r! (n-r)! Γ(ρ+r+1)) z^r
/// ```
///
/// The prefactor `P(1) = Γ(n+ρ+1)/(n! Γ(ρ+1))` is formed in log space. The
/// series is strongly cancelling as `z → 1`, so the normalised coefficients
/// `t_r` (with `t_0 = 1`) are generated by their exact ratio
///
/// ```text
/// t_{r+1}/t_r = -(n-r)(n+ρ+ν+r+1) / ((r+1)(ρ+r+1))
/// ```
///
/// and summed in double-double arithmetic.
pub fn jacobi_gamma_form(j: &JacobiParams, z: f64) -> f64 {
    let n = j.n;
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let at_one = (ln_gamma(nf + j.rho + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(j.rho + 1.0)).exp();
    let shift = DoubleDouble::from(nf + j.rho + j.nu + 1.0);
    let rho1 = DoubleDouble::from(j.rho + 1.0);
    let mut coeff = DoubleDouble::from(1.0);
    let mut power = DoubleDouble::from(1.0);
    let mut sum = DoubleDouble::from(1.0);
    for r in 0..n {
        let rf = r as f64;
        let num = (shift + rf) * (nf - rf);
        let den = (rho1 + rf) * (rf + 1.0);
        coeff = -(coeff * num / den);
        power = power * z;
        sum = sum + coeff * power;
    }
    at_one * sum.to_f64()
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        DoubleDouble { hi: s, lo: err }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        DoubleDouble { hi: s, lo: lo - (s - hi) }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl std::ops::Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = DoubleDouble::two_sum(self.hi, rhs.hi);
        let t = DoubleDouble::two_sum(self.lo, rhs.lo);
        let v = DoubleDouble::renorm(s.hi, s.lo + t.hi);
        DoubleDouble::renorm(v.hi, v.lo + t.lo)
    }
}

impl std::ops::Add<f64> for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        self + DoubleDouble::from(rhs)
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.hi * rhs.hi;
        let err = self.hi.mul_add(rhs.hi, -p);
        DoubleDouble::renorm(p, err + (self.hi * rhs.lo + self.lo * rhs.hi))
    }
}

impl std::ops::Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * DoubleDouble::from(rhs)
    }
}

impl std::ops::Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self + -(rhs * q1);
        let q2 = r.hi / rhs.hi;
        let r = r + -(rhs * q2);
        let q3 = r.hi / rhs.hi;
        DoubleDouble::renorm(q1, q2) + q3
    }
}

/// `P_n^{(ρ,ν)}(ξ)` through the canonical path.
pub fn jacobi(j: &JacobiParams, xi: f64) -> f64 {
    jacobi_gamma_form(j, 0.5 * (1.0 - xi))
}

/// `ln I(p, r)` where
///
/// ```text
/// I = ∫₀¹ z^{n+2ε+r-p-1} (1-z)^{p+2Λ+2} dz
///   = Γ(n+2ε+r-p+1) Γ(p+2Λ+3) / [(n+2ε+r-p) Γ(n+2ε+r+2Λ+3)]
/// ```
pub fn ln_beta_integral_i(n: u32, p: u32, r: u32, eps: f64, lambda: f64) -> Result<f64> {
    if p > n || r > n {
        return Err(Error::domain(format!("need 0 <= p, r <= n, got n={n}, p={p}, r={r}")));
    }
    let x = n as f64 + 2.0 * eps + r as f64 - p as f64;
    let y = p as f64 + 2.0 * lambda + 3.0;
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::domain(format!(
            "Beta integral diverges: z exponent + 1 = {x}, (1-z) exponent + 1 = {y}"
        )));
    }
    Ok(ln_gamma(x + 1.0) + ln_gamma(y) - x.ln() - ln_gamma(x + y))
}

/// The Beta-type integral `I(p, r)`; see [`ln_beta_integral_i`].
pub fn beta_integral_i(n: u32, p: u32, r: u32, eps: f64, lambda: f64) -> Result<f64> {
    ln_beta_integral_i(n, p, r, eps, lambda).map(f64::exp)
}
