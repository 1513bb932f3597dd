//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report reads top to bottom.
//! Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use mrsolve::numerov::{numerov_eigenvalue, spectrum_entry, SolverConfig};
use mrsolve::potential::{Centrifugal, PotentialParams};
use mrsolve::special::{jacobi_gamma_form, jacobi_sum_form, JacobiParams};
use mrsolve::spectrum::{
    coulomb_limit, critical_coupling, energy_nl, epsilon_nl, hulthen_energy, is_bound, lambda_param, level_formula,
    quantization_residual, shape_param_a,
};
use mrsolve::tables::{
    calibrate_amu, compare_published, errata, published_present, published_table, Column, TableId,
    AMU_BAND, DEFAULT_INVB, DEFAULT_STATES,
};
use mrsolve::wavefunction::{
    default_grid, norm_integral_closed, norm_integral_quadrature, norm_integral_uncorrected, radial_unnormalized,
    radial_wavefunction,
};
use mrsolve::{QuantumState, UnitSystem};
use rand::{Rng, SeedableRng};

const TABLE1_TOL: f64 = 1e-6;
const TABLE1_BUDGET: Duration = Duration::from_secs(1);
const EXACT_ORACLE_TOL: f64 = 1e-5;
const APPROX_ORACLE_TOL: f64 = 1e-6;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const MOLECULAR_TOL: f64 = 5e-5;
const MOLECULAR_BUDGET: Duration = Duration::from_secs(5);
const NORM_REL_TOL: f64 = 1e-8;
const TWO_EPS_REL_TOL: f64 = 1e-10;
const THRESHOLD_TOL: f64 = 1e-14;
const RESIDUAL_TOL: f64 = 1e-10;
const JACOBI_TOL: f64 = 1e-10;
const HULTHEN_REL_TOL: f64 = 1e-12;
const COULOMB_REL_TOL: f64 = 1e-5;
const COULOMB_DELTA: f64 = 1e-6;
const COULOMB_MAX_N: u32 = 3;
const CALIBRATION_STEPS: usize = 800;

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

fn outcome(pass: bool, summary: String, details: Vec<String>) -> Outcome {
    Outcome { pass, summary, details }
}

fn st(label: &str) -> QuantumState {
    QuantumState::from_label(label).unwrap()
}

fn table1_params(alpha: f64, invb: f64) -> PotentialParams {
    PotentialParams::with_a_rule_2b(alpha, 1.0 / invb).unwrap()
}

fn closed_form_table1() -> Outcome {
    let start = Instant::now();
    let rows = compare_published(TableId::One, 1.0).unwrap();
    let elapsed = start.elapsed();
    let bad: Vec<String> = rows
        .iter()
        .filter(|c| c.deviation.abs() > TABLE1_TOL)
        .map(|c| {
            format!(
                "{} 1/b={:.3} alpha={}: printed {:.7}, computed {:.7}",
                c.cell.state, c.cell.invb, c.cell.alpha, c.cell.value, c.computed
            )
        })
        .collect();
    let max = rows.iter().filter(|c| c.deviation.abs() <= TABLE1_TOL).map(|c| c.deviation.abs()).fold(0.0, f64::max);
    let ok = rows.len() - bad.len();
    let mut details = bad.clone();
    if elapsed > TABLE1_BUDGET {
        details.push(format!("runtime {elapsed:?} over budget {TABLE1_BUDGET:?}"));
    }
    outcome(
        bad.is_empty() && elapsed <= TABLE1_BUDGET,
        format!(
            "Table 1 closed form: {ok}/{} printed entries within {TABLE1_TOL:e} a.u. (max in-tolerance deviation {max:.1e}), {elapsed:.2?}",
            rows.len()
        ),
        details,
    )
}

fn oracle_grid() -> Outcome {
    let u = UnitSystem::atomic();
    let start = Instant::now();
    let mut details = Vec::new();
    let mut exact_checked = 0;
    let mut exact_worst: f64 = 0.0;
    for cell in published_table(TableId::One).iter().filter(|c| c.column == Column::Ls && c.invb == 0.025) {
        let p = table1_params(cell.alpha, cell.invb);
        let cfg = SolverConfig::seeded(cell.state, &p, &u).unwrap();
        let e = numerov_eigenvalue(&p, cell.state.l, cell.state.n, Centrifugal::Exact, &cfg, &u).unwrap();
        let d = (e - cell.value).abs();
        exact_worst = exact_worst.max(d);
        exact_checked += 1;
        if d > EXACT_ORACLE_TOL {
            details.push(format!("exact {} alpha={}: reference {:.7}, oracle {e:.7}", cell.state, cell.alpha, cell.value));
        }
    }
    let mut approx_checked = 0;
    let mut approx_worst: f64 = 0.0;
    for cell in published_present(TableId::One) {
        let p = table1_params(cell.alpha, cell.invb);
        let cfg = SolverConfig::seeded(cell.state, &p, &u).unwrap();
        let e = numerov_eigenvalue(&p, cell.state.l, cell.state.n, Centrifugal::Approximate, &cfg, &u).unwrap();
        let closed = energy_nl(cell.state, &p, &u).unwrap();
        let d = (e - closed).abs();
        approx_worst = approx_worst.max(d);
        approx_checked += 1;
        if d > APPROX_ORACLE_TOL {
            details.push(format!(
                "approximate {} 1/b={:.3} alpha={}: closed {closed:.9}, oracle {e:.9}",
                cell.state, cell.invb, cell.alpha
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > ORACLE_BUDGET {
        details.push(format!("runtime {elapsed:?} over budget {ORACLE_BUDGET:?}"));
    }
    outcome(
        details.is_empty(),
        format!(
            "Numerov oracle: exact mode vs reference at 1/b=0.025 max {exact_worst:.1e} over {exact_checked} (tol {EXACT_ORACLE_TOL:e}); \
             approximate mode vs closed form max {approx_worst:.1e} over {approx_checked} (tol {APPROX_ORACLE_TOL:e}); {elapsed:.2?}"
        ),
        details,
    )
}

fn error_trend() -> Outcome {
    let u = UnitSystem::atomic();
    let errs: Vec<f64> = [0.025, 0.05, 0.075]
        .iter()
        .map(|&invb| spectrum_entry(st("2p"), &table1_params(0.75, invb), &u).unwrap().err_approx.abs())
        .collect();
    let pass = errs[0] < errs[1] && errs[1] < errs[2];
    outcome(
        pass,
        format!(
            "approximation error for 2p alpha=0.75 over 1/b = 0.025, 0.050, 0.075: {:.2e}, {:.2e}, {:.2e}",
            errs[0], errs[1], errs[2]
        ),
        Vec::new(),
    )
}

fn molecular_tables() -> Outcome {
    let start = Instant::now();
    let cal = calibrate_amu(CALIBRATION_STEPS).unwrap();
    let amu = cal.amu_to_energy;
    let mut details = Vec::new();
    let mut compared = 0;
    let mut excluded = 0;
    let mut within = 0;
    for id in [TableId::Two, TableId::Three] {
        for c in compare_published(id, amu).unwrap() {
            if c.excluded {
                excluded += 1;
                continue;
            }
            compared += 1;
            if c.deviation.abs() <= MOLECULAR_TOL {
                within += 1;
            } else {
                details.push(format!(
                    "table {} {} {} 1/b={:.3} alpha={}: printed {}, computed {:.8} (off by {:.2e} eV)",
                    u8::from(id),
                    c.cell.molecule.as_deref().unwrap_or(""),
                    c.cell.state,
                    c.cell.invb,
                    c.cell.alpha,
                    c.cell.value,
                    c.computed,
                    c.deviation.abs()
                ));
            }
        }
    }
    let listed = errata(amu).unwrap();
    let co = listed.iter().find(|e| e.id == "co-alpha-0-column");
    let co_ok = co.is_some_and(|e| e.evidence.len() == excluded && e.evidence.iter().all(|x| (x.ratio - 2.0).abs() < 0.05));
    if !co_ok {
        details.push("CO alpha=0,1 column not reported as a factor-2 anomaly in errata".into());
    }
    let elapsed = start.elapsed();
    if elapsed > MOLECULAR_BUDGET {
        details.push(format!("runtime {elapsed:?} over budget {MOLECULAR_BUDGET:?}"));
    }
    outcome(
        details.is_empty(),
        format!(
            "molecular tables: {within}/{compared} entries within {MOLECULAR_TOL:e} eV at amu_to_energy={amu:.1} \
             (searched {:.1}..{:.1}); {excluded} CO alpha=0,1 cells flagged in errata; {elapsed:.2?}",
            AMU_BAND.0, AMU_BAND.1
        ),
        details,
    )
}

fn table1_grid() -> Vec<(QuantumState, PotentialParams)> {
    let mut out = Vec::new();
    for label in DEFAULT_STATES {
        for invb in DEFAULT_INVB {
            for alpha in [0.75, 1.5] {
                let p = table1_params(alpha, invb);
                let s = st(label);
                if is_bound(s, &p) {
                    out.push((s, p));
                }
            }
        }
    }
    out
}

fn normalization() -> Outcome {
    let mut details = Vec::new();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for (s, p) in table1_grid() {
        if s.n > 5 {
            continue;
        }
        let closed = norm_integral_closed(s, &p).unwrap();
        let quad = norm_integral_quadrature(s, &p).unwrap().value;
        // N = 1/sqrt(s), so the constants agree to half this.
        let rel = ((closed - quad) / quad).abs();
        worst = worst.max(rel);
        checked += 1;
        if rel > NORM_REL_TOL {
            details.push(format!("{s} alpha={} b={}: closed {closed:e}, quadrature {quad:e}", p.alpha, p.range));
        }
        if s.n == 0 {
            let eps = epsilon_nl(s, &p).unwrap();
            let ratio = norm_integral_uncorrected(s, &p).unwrap() / closed;
            if ((ratio - 2.0 * eps) / (2.0 * eps)).abs() > TWO_EPS_REL_TOL {
                details.push(format!("{s}: uncorrected/closed = {ratio}, expected 2*eps = {}", 2.0 * eps));
            }
        }
    }
    let listed = errata(mrsolve::units::AMU_TO_EV).unwrap();
    let documented = listed.iter().find(|e| e.id == "normalization-beta-divisor").is_some_and(|e| {
        e.evidence.iter().all(|x| {
            let two_eps: f64 = x.label.rsplit("= ").next().unwrap().trim_end_matches(')').parse().unwrap();
            ((x.ratio - two_eps) / two_eps).abs() < 1e-9
        })
    });
    if !documented {
        details.push("errata does not document the factor 2*eps".into());
    }
    outcome(
        details.is_empty(),
        format!(
            "normalization: closed form vs quadrature max relative {worst:.1e} over {checked} states (tol {NORM_REL_TOL:e}); \
             uncorrected form off by 2*eps at n=0 and listed in errata"
        ),
        details,
    )
}

fn properties() -> Outcome {
    let u = UnitSystem::atomic();
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x6d72);
    let mut details = Vec::new();

    // (a) mirror invariance, bit for bit.
    let mut mirror_fail = 0;
    for _ in 0..1000 {
        let alpha: f64 = rng.random_range(-2.0..3.0);
        if 1.0 - (1.0 - alpha) != alpha {
            continue;
        }
        let l = rng.random_range(0..5);
        let n = rng.random_range(0..4);
        let b: f64 = rng.random_range(5.0..60.0);
        let p = PotentialParams::new(2.0 * b, alpha, b).unwrap();
        let q = p.mirrored();
        let s = QuantumState::new(n, l);
        let same = shape_param_a(alpha, l) == shape_param_a(1.0 - alpha, l)
            && lambda_param(alpha, l) == lambda_param(1.0 - alpha, l);
        let mut same_bound = true;
        if is_bound(s, &p) {
            let r = rng.random_range(0.01..10.0) * b;
            same_bound = epsilon_nl(s, &p).unwrap() == epsilon_nl(s, &q).unwrap()
                && energy_nl(s, &p, &u).unwrap() == energy_nl(s, &q, &u).unwrap()
                && radial_unnormalized(s, &p, r).unwrap() == radial_unnormalized(s, &q, r).unwrap();
        }
        if !(same && same_bound) {
            mirror_fail += 1;
        }
    }
    if mirror_fail > 0 {
        details.push(format!("(a) {mirror_fail} mirror mismatches"));
    }

    // (b) zero energy at threshold.
    let mut worst_threshold: f64 = 0.0;
    for _ in 0..1000 {
        let alpha = rng.random_range(-1.0..2.0);
        let (n, l) = (rng.random_range(0..8), rng.random_range(0..6));
        let b = rng.random_range(1.0..100.0);
        let p = PotentialParams::new(critical_coupling(n, l, alpha), alpha, b).unwrap();
        worst_threshold = worst_threshold.max(level_formula(QuantumState::new(n, l), &p, &u).abs());
    }
    if worst_threshold > THRESHOLD_TOL {
        details.push(format!("(b) threshold energy {worst_threshold:e}"));
    }

    // (c) quantization residual on every computed state.
    let grid = table1_grid();
    let worst_residual =
        grid.iter().map(|(s, p)| quantization_residual(*s, p).unwrap().abs()).fold(0.0, f64::max);
    if worst_residual > RESIDUAL_TOL {
        details.push(format!("(c) residual {worst_residual:e}"));
    }

    // (d) both Jacobi representations, relative to the sup norm on [-1, 1].
    let mut worst_jacobi: f64 = 0.0;
    for _ in 0..300 {
        let n = rng.random_range(0..=10);
        let j = JacobiParams::new(n, rng.random_range(0.0..40.0), rng.random_range(-0.5..10.0)).unwrap();
        let sup = (0..=200).map(|k| jacobi_sum_form(&j, -1.0 + k as f64 / 100.0).abs()).fold(0.0, f64::max);
        for _ in 0..10 {
            let xi: f64 = rng.random_range(-1.0..1.0);
            let d = (jacobi_sum_form(&j, xi) - jacobi_gamma_form(&j, 0.5 * (1.0 - xi))).abs() / sup;
            worst_jacobi = worst_jacobi.max(d);
        }
    }
    if worst_jacobi > JACOBI_TOL {
        details.push(format!("(d) Jacobi forms differ by {worst_jacobi:e}"));
    }

    // (e) node counts.
    let mut node_fail = 0;
    for (s, p) in &grid {
        let f = radial_wavefunction(*s, p, &u, &default_grid(*s, p).unwrap()).unwrap();
        if f.node_count() != s.n as usize {
            node_fail += 1;
            details.push(format!("(e) {s} alpha={} b={}: {} nodes", p.alpha, p.range, f.node_count()));
        }
    }

    // (f) alpha = 0 against the Hulthén closed form.
    let mut worst_hulthen: f64 = 0.0;
    let mut hulthen_points = 0;
    while hulthen_points < 1000 {
        let (n, l) = (rng.random_range(0..6), rng.random_range(0..6));
        let b: f64 = rng.random_range(1.0..100.0);
        let strength = rng.random_range(0.1..200.0);
        let s = QuantumState::new(n, l);
        let p = PotentialParams::new(strength, 0.0, b).unwrap();
        if !is_bound(s, &p) {
            continue;
        }
        hulthen_points += 1;
        let h = u.hbar2_over_2mu();
        let e_mr = energy_nl(s, &p, &u).unwrap();
        let e_h = hulthen_energy(s, strength * h / b, 1.0 / b, &u).unwrap();
        worst_hulthen = worst_hulthen.max(((e_mr - e_h) / e_h).abs());
    }
    if worst_hulthen > HULTHEN_REL_TOL {
        details.push(format!("(f) Hulthén reduction relative error {worst_hulthen:e}"));
    }

    // (g) Coulomb limit. The relative gap is 2N²δħ²/(2μZe²) to first
    // order, i.e. N²·δ in atomic units, so the tolerance holds up to N = 3.
    let mut worst_coulomb: f64 = 0.0;
    for big_n in 1..=COULOMB_MAX_N {
        for l in 0..big_n {
            let s = QuantumState::new(big_n - l - 1, l);
            let e = hulthen_energy(s, u.coulomb, COULOMB_DELTA, &u).unwrap();
            let c = coulomb_limit(s, 1.0, &u);
            worst_coulomb = worst_coulomb.max(((e - c) / c).abs());
        }
    }
    if worst_coulomb > COULOMB_REL_TOL {
        details.push(format!("(g) Coulomb limit relative error {worst_coulomb:e}"));
    }

    outcome(
        details.is_empty(),
        format!(
            "properties: (a) mirror mismatches {mirror_fail}; (b) threshold {worst_threshold:.1e}; (c) residual {worst_residual:.1e}; \
             (d) Jacobi {worst_jacobi:.1e}; (e) node failures {node_fail}/{}; (f) Hulthén {worst_hulthen:.1e}; (g) Coulomb (N <= {COULOMB_MAX_N}) {worst_coulomb:.1e}",
            grid.len()
        ),
        details,
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mrsolve");
    let run = || Command::new(bin).args(["table", "--id", "1", "--format", "csv"]).output().unwrap();
    let a = run();
    let b = run();
    let pass = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(pass, format!("determinism: two `table --id 1` runs, {} bytes each, identical = {}", a.stdout.len(), a.stdout == b.stdout), Vec::new())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1", closed_form_table1),
        ("2", oracle_grid),
        ("3", error_trend),
        ("4", molecular_tables),
        ("5", normalization),
        ("6", properties),
        ("7", determinism),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let o = check();
        println!("[{}] criterion {id}: {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for d in &o.details {
            println!("        {d}");
        }
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
