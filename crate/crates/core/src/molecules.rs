//! Diatomic molecules and energies in eV.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::spectrum::energy_nl;
use crate::state::QuantumState;
use crate::units::{UnitSystem, PM_PER_ANGSTROM};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeSpec {
    pub name: String,
    pub mu_amu: f64,
}

impl MoleculeSpec {
    pub fn new(name: impl Into<String>, mu_amu: f64) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::domain("molecule name must not be empty"));
        }
        if !(mu_amu > 0.0) || !mu_amu.is_finite() {
            return Err(Error::domain(format!("{name}: mu_amu must be positive, got {mu_amu}")));
        }
        Ok(MoleculeSpec { name, mu_amu })
    }
}

pub fn builtin_molecules() -> Vec<MoleculeSpec> {
    [("HCl", 0.9801045), ("CH", 0.929931), ("LiH", 0.8801221), ("CO", 6.8606719)]
        .into_iter()
        .map(|(name, mu_amu)| MoleculeSpec { name: name.to_string(), mu_amu })
        .collect()
}

/// Known molecules plus the names that were overridden while loading.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeSet {
    pub molecules: Vec<MoleculeSpec>,
    pub overridden: Vec<String>,
}

impl Default for MoleculeSet {
    fn default() -> Self {
        MoleculeSet { molecules: builtin_molecules(), overridden: Vec::new() }
    }
}

impl MoleculeSet {
    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Result<&MoleculeSpec> {
        self.molecules
            .iter()
            .find(|m| m.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownMolecule(name.to_string()))
    }

    fn insert(&mut self, spec: MoleculeSpec) {
        match self.molecules.iter_mut().find(|m| m.name.eq_ignore_ascii_case(&spec.name)) {
            Some(slot) => {
                self.overridden.push(spec.name.clone());
                *slot = spec;
            }
            None => self.molecules.push(spec),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoleculeFile {
    #[serde(default)]
    molecule: Vec<MoleculeEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoleculeEntry {
    name: String,
    mu_amu: f64,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Parse a TOML molecule list:
///
/// ```toml
/// [[molecule]]
/// name = "D2"
/// mu_amu = 1.00705
/// ```
///
/// Entries are merged over the built-ins; a repeated name replaces the
/// earlier entry and is listed in [`MoleculeSet::overridden`].
pub fn parse_molecules(text: &str, origin: &str) -> Result<MoleculeSet> {
    let file: MoleculeFile = toml::from_str(text).map_err(|e| Error::Config {
        path: origin.to_string(),
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        message: e.message().to_string(),
    })?;
    let mut set = MoleculeSet::default();
    for (k, entry) in file.molecule.into_iter().enumerate() {
        let spec = MoleculeSpec::new(entry.name, entry.mu_amu).map_err(|e| Error::Config {
            path: origin.to_string(),
            line: entry_line(text, k),
            message: e.to_string(),
        })?;
        set.insert(spec);
    }
    Ok(set)
}

// Line of the k-th `[[molecule]]` header.
fn entry_line(text: &str, k: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("[[molecule]]"))
        .nth(k)
        .map(|(i, _)| i + 1)
        .unwrap_or(0)
}

pub fn load_molecules(path: &Path) -> Result<MoleculeSet> {
    let text = std::fs::read_to_string(path)?;
    parse_molecules(&text, &path.display().to_string())
}

/// Energy in eV with `b = 1/invb` pm and `A = 2·b[pm]`.
///
/// Only `hbar_c` and `amu_to_energy` are taken from `u`; the mass is the
/// molecule's.
pub fn molecular_energy(
    s: QuantumState,
    m: &MoleculeSpec,
    invb: f64,
    alpha: f64,
    u: &UnitSystem,
) -> Result<f64> {
    if !(invb > 0.0) || !invb.is_finite() {
        return Err(Error::domain(format!("1/b must be positive, got {invb}")));
    }
    let b_pm = 1.0 / invb;
    let units = UnitSystem::molecular(m.mu_amu).with_hbar_c(u.hbar_c).with_amu_to_energy(u.amu_to_energy);
    let p = PotentialParams::new(2.0 * b_pm, alpha, b_pm / PM_PER_ANGSTROM)?;
    energy_nl(s, &p, &units)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev() -> UnitSystem {
        UnitSystem::molecular(1.0)
    }

    #[test]
    fn builtins_are_present() {
        let set = MoleculeSet::default();
        assert_eq!(set.molecules.len(), 4);
        assert_eq!(set.get("hcl").unwrap().mu_amu, 0.9801045);
        assert!(matches!(set.get("N2"), Err(Error::UnknownMolecule(_))));
    }

    #[test]
    fn empty_file_gives_builtins() {
        assert_eq!(parse_molecules("", "x.toml").unwrap(), MoleculeSet::default());
    }

    #[test]
    fn user_molecule_is_added() {
        let set = parse_molecules("[[molecule]]\nname = \"D2\"\nmu_amu = 1.00705\n", "m.toml").unwrap();
        assert_eq!(set.molecules.len(), 5);
        assert_eq!(set.get("D2").unwrap().mu_amu, 1.00705);
        assert!(set.overridden.is_empty());
    }

    #[test]
    fn duplicate_overrides_and_is_reported() {
        let set = parse_molecules("[[molecule]]\nname = \"CO\"\nmu_amu = 3.43\n", "m.toml").unwrap();
        assert_eq!(set.molecules.len(), 4);
        assert_eq!(set.get("CO").unwrap().mu_amu, 3.43);
        assert_eq!(set.overridden, vec!["CO".to_string()]);
    }

    #[test]
    fn non_positive_mass_is_rejected_with_line() {
        let text = "[[molecule]]\nname = \"A\"\nmu_amu = 1.0\n\n[[molecule]]\nname = \"B\"\nmu_amu = 0\n";
        match parse_molecules(text, "m.toml") {
            Err(Error::Config { line, message, .. }) => {
                assert_eq!(line, 5);
                assert!(message.contains("positive"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_line() {
        let text = "[[molecule]]\nname = \"A\"\nmu_amu = = 2\n";
        match parse_molecules(text, "m.toml") {
            Err(Error::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reference_energies() {
        let set = MoleculeSet::default();
        let s = QuantumState::from_label("2p").unwrap();
        let cases = [("HCl", 0.0, -4.81152646), ("LiH", 0.75, -5.72700906), ("CO", 0.75, -0.734690030)];
        for (name, alpha, expect) in cases {
            let e = molecular_energy(s, set.get(name).unwrap(), 0.025, alpha, &ev()).unwrap();
            assert!((e - expect).abs() < 1e-4, "{name}: {e}");
        }
    }

    #[test]
    fn alpha_ratio_is_mass_independent() {
        let set = MoleculeSet::default();
        for label in ["2p", "3d", "4f", "6g"] {
            let s = QuantumState::from_label(label).unwrap();
            let ratios: Vec<f64> = set
                .molecules
                .iter()
                .map(|m| {
                    molecular_energy(s, m, 0.025, 0.75, &ev()).unwrap()
                        / molecular_energy(s, m, 0.025, 0.0, &ev()).unwrap()
                })
                .collect();
            for r in &ratios {
                assert!(((r - ratios[0]) / ratios[0]).abs() < 1e-10);
            }
        }
    }
}
