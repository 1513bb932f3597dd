//! Unit systems.
//!
//! Every energy in the crate is expressed through the single prefactor
//! `ħ²/2μ` (energy × length²). Atomic mode fixes `ħ = μ = 1`, so the
//! prefactor is `1/2` with lengths in bohr and energies in hartree.
//! Molecular mode works in eV and Å and takes the reduced mass in amu.

use serde::{Deserialize, Serialize};

/// `ħc` in eV·Å.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.29;
/// Default rest energy of one atomic mass unit in eV.
pub const AMU_TO_EV: f64 = 931.494e6;
/// `e²/(4πε₀)` in eV·Å.
pub const COULOMB_EV_ANGSTROM: f64 = 14.399_645_478_4;
/// Picometres per ångström.
pub const PM_PER_ANGSTROM: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    Atomic,
    Molecular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub mode: UnitMode,
    /// `ħc` in energy × length. Unused in atomic mode.
    pub hbar_c: f64,
    /// Energy equivalent of one mass unit. Unused in atomic mode.
    pub amu_to_energy: f64,
    /// Reduced mass: electron masses in atomic mode, amu in molecular mode.
    pub mass: f64,
    /// `e²/(4πε₀)` in energy × length.
    pub coulomb: f64,
}

impl UnitSystem {
    /// Atomic units with `ħ = μ = 1`.
    pub const fn atomic() -> Self {
        UnitSystem {
            mode: UnitMode::Atomic,
            hbar_c: 1.0,
            amu_to_energy: 1.0,
            mass: 1.0,
            coulomb: 1.0,
        }
    }

    /// eV / Å units for a diatomic with reduced mass `mu_amu`.
    pub const fn molecular(mu_amu: f64) -> Self {
        UnitSystem {
            mode: UnitMode::Molecular,
            hbar_c: HBAR_C_EV_ANGSTROM,
            amu_to_energy: AMU_TO_EV,
            mass: mu_amu,
            coulomb: COULOMB_EV_ANGSTROM,
        }
    }

    pub fn with_amu_to_energy(mut self, amu_to_energy: f64) -> Self {
        self.amu_to_energy = amu_to_energy;
        self
    }

    pub fn with_hbar_c(mut self, hbar_c: f64) -> Self {
        self.hbar_c = hbar_c;
        self
    }

    /// `ħ²/2μ` in energy × length².
    pub fn hbar2_over_2mu(&self) -> f64 {
        match self.mode {
            UnitMode::Atomic => 0.5 / self.mass,
            UnitMode::Molecular => self.hbar_c * self.hbar_c / (2.0 * self.mass * self.amu_to_energy),
        }
    }

    /// `ħ²/(2μb²)`, the energy scale of a potential with range `b`.
    pub fn energy_scale(&self, b: f64) -> f64 {
        self.hbar2_over_2mu() / (b * b)
    }

    pub fn energy_unit(&self) -> &'static str {
        match self.mode {
            UnitMode::Atomic => "hartree",
            UnitMode::Molecular => "eV",
        }
    }

    pub fn length_unit(&self) -> &'static str {
        match self.mode {
            UnitMode::Atomic => "bohr",
            UnitMode::Molecular => "angstrom",
        }
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::atomic()
    }
}
