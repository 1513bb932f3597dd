//! Independent shooting eigensolver for the radial equation.
//!
//! Works with `x = ln r` and `u(r) = e^{x/2} φ(x)`, which turns
//! `u'' = (V_eff - E)/H · u` into
//!
//! ```text
//! φ''(x) = [r² (V_eff(r) - E)/H + 1/4] φ(x)
//! ```
//!
//! with `H = ħ²/2μ`. The `1/r²` parts of `V_eff` become constants, so a
//! uniform `x` grid resolves the origin and the long tail with the same
//! step. Near the origin `φ ~ r^{Λ+1/2}`, i.e. `u ~ r^{Λ+1}`; in the tail
//! `u ~ e^{-κr}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{centrifugal_unchecked, potential_unchecked, Centrifugal, PotentialParams};
use crate::spectrum::{energy_nl, lambda_param};
use crate::state::QuantumState;
use crate::units::UnitSystem;

pub const DEFAULT_POINTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub energy_bracket: (f64, f64),
    pub tol_energy: f64,
    pub max_bisections: u32,
}

impl SolverConfig {
    pub fn new(
        r_min: f64,
        r_max: f64,
        n_points: usize,
        energy_bracket: (f64, f64),
        tol_energy: f64,
        max_bisections: u32,
    ) -> Result<Self> {
        let cfg = SolverConfig { r_min, r_max, n_points, energy_bracket, tol_energy, max_bisections };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::domain(format!("need 0 < r_min < r_max, got {} and {}", self.r_min, self.r_max)));
        }
        if self.n_points < 16 {
            return Err(Error::domain("n_points must be at least 16"));
        }
        if !(self.tol_energy > 0.0) {
            return Err(Error::domain("tol_energy must be positive"));
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi && hi < 0.0) {
            return Err(Error::domain(format!("energy bracket must satisfy lo < hi < 0, got ({lo}, {hi})")));
        }
        Ok(())
    }

    /// Bracket `[1.5 E, 0.5 E]` around the closed-form level, with the box
    /// sized so the tail reaches well past the turning point of the upper
    /// bracket energy.
    pub fn seeded(s: QuantumState, p: &PotentialParams, u: &UnitSystem) -> Result<Self> {
        let e = energy_nl(s, p, u)?;
        let h = u.hbar2_over_2mu();
        let top = 0.5 * e;
        let kappa_top = (-top / h).sqrt();
        let kappa = (-e / h).sqrt();
        let r_turn = outer_turning_point(p, s.l, Centrifugal::Exact, top, u)
            .max(outer_turning_point(p, s.l, Centrifugal::Approximate, top, u));
        let r_max = f64::max(r_turn + 40.0 / kappa_top, 50.0 / kappa);
        SolverConfig::new(p.range * 1e-6, r_max, DEFAULT_POINTS, (1.5 * e, top), 1e-12 * e.abs(), 200)
    }

    pub fn with_points(mut self, n_points: usize) -> Self {
        self.n_points = n_points;
        self
    }
}

fn v_eff(r: f64, p: &PotentialParams, l: u32, mode: Centrifugal, u: &UnitSystem) -> f64 {
    potential_unchecked(r, p, u) + centrifugal_unchecked(r, p.range, l, mode, u)
}

// Outermost radius on a coarse log scan where V_eff < e.
fn outer_turning_point(p: &PotentialParams, l: u32, mode: Centrifugal, e: f64, u: &UnitSystem) -> f64 {
    let (lo, hi) = ((p.range * 1e-6).ln(), (p.range * 1e4).ln());
    let steps = 4000;
    let mut last = p.range;
    for i in 0..=steps {
        let r = (lo + (hi - lo) * i as f64 / steps as f64).exp();
        if v_eff(r, p, l, mode, u) < e {
            last = r;
        }
    }
    last
}

/// Result of a converged search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub energy: f64,
    pub nodes: usize,
    pub bisections: u32,
    pub refinements: u32,
    pub widenings: u32,
}

struct Grid {
    dx: f64,
    x: Vec<f64>,
    r: Vec<f64>,
    // r² V_eff / H + 1/4 and r²/H, so that g(E) = g0 - E w.
    g0: Vec<f64>,
    w: Vec<f64>,
    start_exponent: f64,
    h: f64,
}

const RESCALE: f64 = 1e200;

impl Grid {
    fn new(p: &PotentialParams, l: u32, mode: Centrifugal, cfg: &SolverConfig, u: &UnitSystem) -> Self {
        let n = cfg.n_points;
        let (a, b) = (cfg.r_min.ln(), cfg.r_max.ln());
        let dx = (b - a) / (n - 1) as f64;
        let h = u.hbar2_over_2mu();
        let x: Vec<f64> = (0..n).map(|i| a + dx * i as f64).collect();
        let r: Vec<f64> = x.iter().map(|x| x.exp()).collect();
        let w: Vec<f64> = r.iter().map(|r| r * r / h).collect();
        let g0 = r.iter().zip(&w).map(|(&r, &w)| w * v_eff(r, p, l, mode, u) + 0.25).collect();
        Grid { dx, x, r, g0, w, start_exponent: lambda_param(p.alpha, l) + 0.5, h }
    }

    fn t(&self, i: usize, e: f64) -> f64 {
        self.dx * self.dx * (self.g0[i] - e * self.w[i]) / 12.0
    }

    // Outward to the last grid point; returns the sign-change count.
    fn outward_nodes(&self, e: f64) -> usize {
        let mut prev = 1.0;
        let mut cur = (self.start_exponent * self.dx).exp();
        let mut t_prev = self.t(0, e);
        let mut t_cur = self.t(1, e);
        let mut nodes = 0;
        for i in 2..self.x.len() {
            let t_next = self.t(i, e);
            let next = (2.0 * cur * (1.0 + 5.0 * t_cur) - prev * (1.0 - t_prev)) / (1.0 - t_next);
            if next != 0.0 && cur != 0.0 && (next > 0.0) != (cur > 0.0) {
                nodes += 1;
            }
            prev = cur;
            cur = next;
            t_prev = t_cur;
            t_cur = t_next;
            if cur.abs() > RESCALE {
                prev /= RESCALE;
                cur /= RESCALE;
            }
        }
        nodes
    }

    fn match_index(&self, e: f64) -> usize {
        let n = self.x.len();
        let m = (0..n).rev().find(|&i| self.g0[i] - e * self.w[i] < 0.0).unwrap_or(n / 2);
        m.clamp(2, n - 3)
    }

    // Stitched solution at energy e: log-derivative mismatch at the match
    // point and the total node count.
    fn shoot(&self, e: f64) -> (f64, usize) {
        let n = self.x.len();
        let m = self.match_index(e);

        let mut out = vec![0.0; m + 2];
        out[0] = 1.0;
        out[1] = (self.start_exponent * self.dx).exp();
        for i in 1..=m {
            out[i + 1] = (2.0 * out[i] * (1.0 + 5.0 * self.t(i, e)) - out[i - 1] * (1.0 - self.t(i - 1, e)))
                / (1.0 - self.t(i + 1, e));
            if out[i + 1].abs() > RESCALE {
                out[..=i + 1].iter_mut().for_each(|v| *v /= RESCALE);
            }
        }

        let kappa = (-e / self.h).sqrt();
        let mut inn = vec![0.0; n];
        inn[n - 1] = 1.0;
        inn[n - 2] = (-(self.x[n - 2] - self.x[n - 1]) / 2.0 - kappa * (self.r[n - 2] - self.r[n - 1])).exp();
        for i in (m..n - 1).rev() {
            inn[i - 1] = (2.0 * inn[i] * (1.0 + 5.0 * self.t(i, e)) - inn[i + 1] * (1.0 - self.t(i + 1, e)))
                / (1.0 - self.t(i - 1, e));
            if inn[i - 1].abs() > RESCALE {
                inn[i - 1..].iter_mut().for_each(|v| *v /= RESCALE);
            }
        }

        let d_out = (out[m + 1] - out[m - 1]) / (2.0 * self.dx * out[m]);
        let d_in = (inn[m + 1] - inn[m - 1]) / (2.0 * self.dx * inn[m]);
        let scale = out[m] / inn[m];
        let stitched: Vec<f64> = out[..m].iter().copied().chain(inn[m..].iter().map(|v| v * scale)).collect();
        (d_out - d_in, crate::wavefunction::count_sign_changes(&stitched))
    }
}

/// Full search with diagnostics; see [`numerov_eigenvalue`].
pub fn numerov_solve(
    p: &PotentialParams,
    l: u32,
    n: u32,
    mode: Centrifugal,
    cfg: &SolverConfig,
    u: &UnitSystem,
) -> Result<Eigenvalue> {
    cfg.validate()?;
    let grid = Grid::new(p, l, mode, cfg, u);
    let target = n as usize;
    let (mut lo, mut hi) = cfg.energy_bracket;
    let mut widenings = 0;

    let mut n_lo = grid.outward_nodes(lo);
    while n_lo > target {
        widenings += 1;
        if widenings > 60 {
            return Err(Error::Eigensolver { reason: "bracket exhausted below the level".into(), lo, hi });
        }
        hi = hi.min(lo);
        lo *= 2.0;
        n_lo = grid.outward_nodes(lo);
    }
    let mut n_hi = grid.outward_nodes(hi);
    while n_hi <= target {
        widenings += 1;
        if widenings > 60 || hi.abs() < 1e-300 {
            return Err(Error::Eigensolver { reason: format!("node count {} unreachable", target + 1), lo, hi });
        }
        lo = lo.max(hi);
        hi *= 0.5;
        n_hi = grid.outward_nodes(hi);
    }

    // Node bisection until one level is isolated in a narrow bracket.
    let mut bisections = 0;
    while n_lo != target || n_hi != target + 1 || (hi - lo) > 1e-7 * lo.abs().max(hi.abs()) {
        if bisections >= cfg.max_bisections {
            return Err(Error::Eigensolver { reason: "bisection limit reached".into(), lo, hi });
        }
        if hi - lo <= cfg.tol_energy {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let k = grid.outward_nodes(mid);
        if k > target {
            hi = mid;
            n_hi = k;
        } else {
            lo = mid;
            n_lo = k;
        }
        bisections += 1;
    }

    // Illinois refinement on the mismatch.
    let (mut f_lo, _) = grid.shoot(lo);
    let (mut f_hi, _) = grid.shoot(hi);
    let mut refinements = 0;
    let mut energy = 0.5 * (lo + hi);
    if f_lo * f_hi < 0.0 {
        let mut side = 0i8;
        while hi - lo > cfg.tol_energy && refinements < 200 {
            let e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            let e = if e > lo && e < hi { e } else { 0.5 * (lo + hi) };
            let (f, _) = grid.shoot(e);
            refinements += 1;
            energy = e;
            if f == 0.0 {
                lo = e;
                hi = e;
                break;
            }
            if (f < 0.0) == (f_lo < 0.0) {
                lo = e;
                f_lo = f;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = e;
                f_hi = f;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
        if hi - lo > cfg.tol_energy && refinements >= 200 {
            return Err(Error::Eigensolver { reason: "mismatch refinement did not converge".into(), lo, hi });
        }
    } else {
        // Mismatch has no usable sign change; finish on node count alone.
        while hi - lo > cfg.tol_energy {
            if bisections >= cfg.max_bisections {
                return Err(Error::Eigensolver { reason: "bisection limit reached".into(), lo, hi });
            }
            let mid = 0.5 * (lo + hi);
            if grid.outward_nodes(mid) > target {
                hi = mid;
            } else {
                lo = mid;
            }
            bisections += 1;
        }
        energy = 0.5 * (lo + hi);
    }

    let (_, nodes) = grid.shoot(energy);
    Ok(Eigenvalue { energy, nodes, bisections, refinements, widenings })
}

/// Eigenvalue of the radial equation with `n` interior nodes.
pub fn numerov_eigenvalue(
    p: &PotentialParams,
    l: u32,
    n: u32,
    mode: Centrifugal,
    cfg: &SolverConfig,
    u: &UnitSystem,
) -> Result<f64> {
    numerov_solve(p, l, n, mode, cfg, u).map(|e| e.energy)
}

/// Closed form next to both oracle modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub state: QuantumState,
    pub e_closed: f64,
    pub e_oracle_exact: f64,
    pub e_oracle_approx: f64,
    /// `e_closed - e_oracle_exact`.
    pub err_approx: f64,
}

pub fn spectrum_entry(s: QuantumState, p: &PotentialParams, u: &UnitSystem) -> Result<SpectrumEntry> {
    let e_closed = energy_nl(s, p, u)?;
    let cfg = SolverConfig::seeded(s, p, u)?;
    let e_oracle_exact = numerov_eigenvalue(p, s.l, s.n, Centrifugal::Exact, &cfg, u)?;
    let e_oracle_approx = numerov_eigenvalue(p, s.l, s.n, Centrifugal::Approximate, &cfg, u)?;
    Ok(SpectrumEntry { state: s, e_closed, e_oracle_exact, e_oracle_approx, err_approx: e_closed - e_oracle_exact })
}

pub fn approximation_error_report(
    p: &PotentialParams,
    states: &[QuantumState],
    u: &UnitSystem,
) -> Result<Vec<SpectrumEntry>> {
    states.iter().map(|&s| spectrum_entry(s, p, u)).collect()
}
