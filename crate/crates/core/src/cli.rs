//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::molecules::{load_molecules, MoleculeSet};
use crate::numerov::approximation_error_report;
use crate::potential::PotentialParams;
use crate::spectrum::{coulomb_limit, energy_nl, epsilon_nl, hulthen_energy, is_bound};
use crate::state::QuantumState;
use crate::tables::{
    calibrate_amu, default_amu_to_energy, errata_json, generate_table, OutputFormat, TableId, TableRequest,
    DEFAULT_STATES,
};
use crate::units::{UnitMode, UnitSystem, PM_PER_ANGSTROM};
use crate::wavefunction::{default_grid, radial_wavefunction, radial_wavefunction_with, NormMethod};

#[derive(Parser, Debug)]
#[command(name = "mrsolve", version, about = "Bound states of the Manning-Rosen potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form energy of one state.
    Energy {
        #[arg(long)]
        state: String,
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: ScalarFormat,
    },
    /// Sample the normalized radial wavefunction.
    Wavefunction {
        #[arg(long)]
        state: String,
        #[command(flatten)]
        pot: PotentialArgs,
        /// Number of log-spaced samples.
        #[arg(long, default_value_t = 2000)]
        points: usize,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, value_enum)]
        norm: Option<NormArg>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one of the reference tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        states: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        invb: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        molecules: Option<Vec<String>>,
        #[arg(long)]
        molecules_file: Option<PathBuf>,
        /// Where to write errata.json; defaults to next to --out.
        #[arg(long)]
        errata: Option<PathBuf>,
    },
    /// Closed form against the Numerov solver in both centrifugal modes.
    Verify {
        #[arg(long, value_delimiter = ',')]
        states: Option<Vec<String>>,
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Hulthén level for V = -Ze² δ e^{-δr}/(1 - e^{-δr}).
    Hulthen {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        units: UnitArgs,
    },
    /// Coulomb level -Z² e⁴ μ/(2ħ² N²).
    Coulomb {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[command(flatten)]
        units: UnitArgs,
    },
    /// Best amu→eV constant for the molecular tables.
    Calibrate {
        #[arg(long, default_value_t = 800)]
        steps: usize,
    },
    /// Print the list of known discrepancies as JSON.
    Errata {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct UnitArgs {
    #[arg(long, value_enum, default_value = "atomic")]
    units: UnitsArg,
    /// Molecule for eV units; implies --units ev.
    #[arg(long)]
    molecule: Option<String>,
    #[arg(long)]
    molecules_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Inverse range 1/b (pm⁻¹ in eV units).
    #[arg(long, conflicts_with = "b", required_unless_present = "b")]
    invb: Option<f64>,
    /// Range b (pm in eV units).
    #[arg(long)]
    b: Option<f64>,
    /// Explicit dimensionless strength A.
    #[arg(long = "A", conflicts_with = "a_rule")]
    strength: Option<f64>,
    /// Strength rule; `2b` sets A to twice the numeric value of b.
    #[arg(long = "A-rule", value_enum)]
    a_rule: Option<ARule>,
    #[command(flatten)]
    units: UnitArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ARule {
    #[value(name = "2b")]
    TwoB,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum UnitsArg {
    Atomic,
    Ev,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ScalarFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum NormArg {
    Closed,
    Quadrature,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parse `argv` (including the program name) and run; returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run_cli`] with explicit output streams.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Run(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn decimals(u: &UnitSystem) -> usize {
    match u.mode {
        UnitMode::Atomic => 7,
        UnitMode::Molecular => 8,
    }
}

fn parse_state(label: &str) -> CliResult<QuantumState> {
    QuantumState::from_label(label).map_err(|e| CliError::Usage(e.to_string()))
}

fn molecule_set(path: Option<&Path>, err: &mut dyn Write) -> CliResult<MoleculeSet> {
    let Some(path) = path else { return Ok(MoleculeSet::default()) };
    let set = load_molecules(path)?;
    for name in &set.overridden {
        let _ = writeln!(err, "warning: molecule `{name}` in {} overrides an earlier definition", path.display());
    }
    Ok(set)
}

impl UnitArgs {
    fn resolve(&self, err: &mut dyn Write) -> CliResult<UnitSystem> {
        match (&self.molecule, self.units) {
            (Some(name), _) => {
                let set = molecule_set(self.molecules_file.as_deref(), err)?;
                let m = set.get(name)?;
                Ok(UnitSystem::molecular(m.mu_amu).with_amu_to_energy(default_amu_to_energy()?))
            }
            (None, UnitsArg::Ev) => Err(CliError::Usage("--units ev needs --molecule".into())),
            (None, UnitsArg::Atomic) => Ok(UnitSystem::atomic()),
        }
    }
}

impl PotentialArgs {
    // In eV units b is read in pm, as in the molecular tables, and
    // converted to Å for the model.
    fn resolve(&self, err: &mut dyn Write) -> CliResult<(PotentialParams, UnitSystem)> {
        let u = self.units.resolve(err)?;
        let b = match (self.invb, self.b) {
            (Some(invb), None) if invb > 0.0 => 1.0 / invb,
            (None, Some(b)) if b > 0.0 => b,
            _ => return Err(CliError::Usage("need a positive --invb or --b".into())),
        };
        let strength = self.strength.unwrap_or(2.0 * b);
        let range = match u.mode {
            UnitMode::Atomic => b,
            UnitMode::Molecular => b / PM_PER_ANGSTROM,
        };
        Ok((PotentialParams::new(strength, self.alpha, range)?, u))
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Energy { state, pot, format } => {
            let s = parse_state(&state)?;
            let (p, u) = pot.resolve(err)?;
            let e = energy_nl(s, &p, &u)?;
            let d = decimals(&u);
            match format {
                ScalarFormat::Text => writeln!(out, "{e:.d$}")?,
                ScalarFormat::Json => {
                    let v = serde_json::json!({
                        "state": s,
                        "params": p,
                        "epsilon": epsilon_nl(s, &p)?,
                        "energy": e,
                        "energy_unit": u.energy_unit(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
                }
            }
        }
        Command::Wavefunction { state, pot, points, r_min, r_max, norm, format, out: path } => {
            let s = parse_state(&state)?;
            let (p, u) = pot.resolve(err)?;
            let grid = if r_min.is_none() && r_max.is_none() && points == 2000 {
                default_grid(s, &p)?
            } else {
                let def = default_grid(s, &p)?;
                let lo = r_min.unwrap_or(def[0]);
                let hi = r_max.unwrap_or(def[def.len() - 1]);
                if !(lo > 0.0 && hi > lo) || points < 2 {
                    return Err(CliError::Usage("need 0 < r-min < r-max and at least 2 points".into()));
                }
                crate::wavefunction::log_grid(lo, hi, points)
            };
            let f = match norm {
                None => radial_wavefunction(s, &p, &u, &grid)?,
                Some(NormArg::Closed) => radial_wavefunction_with(s, &p, &u, &grid, NormMethod::ClosedForm)?,
                Some(NormArg::Quadrature) => radial_wavefunction_with(s, &p, &u, &grid, NormMethod::Quadrature)?,
            };
            let text = match format {
                FormatArg::Csv => f.to_csv(),
                FormatArg::Json => serde_json::to_string_pretty(&f).map_err(Error::from)? + "\n",
            };
            emit(&text, path.as_deref(), out)?;
        }
        Command::Table { id, format, out: path, states, invb, alphas, molecules, molecules_file, errata } => {
            let id = TableId::try_from(id)?;
            let set = molecule_set(molecules_file.as_deref(), err)?;
            let mut req = TableRequest::new(id);
            req.output = format.into();
            req.amu_to_energy = default_amu_to_energy()?;
            if let Some(states) = states {
                req.states = states.iter().map(|s| parse_state(s)).collect::<CliResult<_>>()?;
                req.published_rows_only = false;
            }
            if let Some(invb) = invb {
                if invb.iter().any(|x| !(*x > 0.0)) {
                    return Err(CliError::Usage("--invb values must be positive".into()));
                }
                req.invb_values = invb;
                req.published_rows_only = false;
            }
            if let Some(alphas) = alphas {
                req.alphas = alphas;
            }
            if let Some(molecules) = molecules {
                if !id.is_molecular() {
                    return Err(CliError::Usage("--molecules applies to tables 2 and 3".into()));
                }
                req.molecules = molecules;
                req.published_rows_only = false;
            }
            let table = generate_table(&req, &set)?;
            emit(&table.render(req.output)?, path.as_deref(), out)?;
            let errata_path = errata.or_else(|| {
                path.as_deref().map(|p| p.parent().unwrap_or(Path::new("")).join("errata.json"))
            });
            if let Some(ep) = errata_path {
                std::fs::write(ep, errata_json(req.amu_to_energy)?)?;
            }
        }
        Command::Verify { states, pot, format } => {
            let (p, u) = pot.resolve(err)?;
            let states: Vec<QuantumState> = match states {
                Some(list) => list.iter().map(|s| parse_state(s)).collect::<CliResult<_>>()?,
                None => DEFAULT_STATES
                    .iter()
                    .map(|l| QuantumState::from_label(l).unwrap())
                    .filter(|s| is_bound(*s, &p))
                    .collect(),
            };
            let report = approximation_error_report(&p, &states, &u)?;
            match format {
                FormatArg::Csv => {
                    let d = decimals(&u);
                    writeln!(out, "state,e_closed,e_oracle_exact,e_oracle_approx,err_approx")?;
                    for r in &report {
                        writeln!(
                            out,
                            "{},{:.d$},{:.d$},{:.d$},{:.d$}",
                            r.state, r.e_closed, r.e_oracle_exact, r.e_oracle_approx, r.err_approx
                        )?;
                    }
                }
                FormatArg::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(Error::from)?)?;
                }
            }
        }
        Command::Hulthen { state, z, delta, units } => {
            let s = parse_state(&state)?;
            let u = units.resolve(err)?;
            let e = hulthen_energy(s, z * u.coulomb, delta, &u)?;
            writeln!(out, "{e:.d$}", d = decimals(&u))?;
        }
        Command::Coulomb { state, z, units } => {
            let s = parse_state(&state)?;
            let u = units.resolve(err)?;
            writeln!(out, "{:.d$}", coulomb_limit(s, z, &u), d = decimals(&u))?;
        }
        Command::Calibrate { steps } => {
            if steps == 0 {
                return Err(CliError::Usage("--steps must be positive".into()));
            }
            let c = calibrate_amu(steps)?;
            writeln!(out, "amu_to_energy = {:.1} eV", c.amu_to_energy)?;
            writeln!(out, "cells within 5e-5 eV: {} of {}", c.within_tolerance, c.compared)?;
            writeln!(out, "largest in-tolerance deviation: {:.2e} eV", c.max_deviation_within)?;
        }
        Command::Errata { out: path } => {
            emit(&errata_json(default_amu_to_energy()?)?, path.as_deref(), out)?;
        }
    }
    Ok(())
}
