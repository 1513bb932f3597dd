use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

/// A bound state labelled by radial quantum number `n` (number of interior
/// nodes) and orbital quantum number `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct QuantumState {
    pub n: u32,
    pub l: u32,
}

impl From<QuantumState> for String {
    fn from(s: QuantumState) -> String {
        s.label()
    }
}

impl TryFrom<String> for QuantumState {
    type Error = Error;
    fn try_from(v: String) -> Result<Self> {
        QuantumState::from_label(&v)
    }
}

impl QuantumState {
    pub const fn new(n: u32, l: u32) -> Self {
        QuantumState { n, l }
    }

    /// Parses a spectroscopic label such as `2p` or `6g`; the principal
    /// number `N` maps to `n = N - l - 1`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let bad = || Error::InvalidLabel(label.to_string());
        if let Some((n, l)) = label.strip_prefix("n=").and_then(|r| r.split_once(",l=")) {
            return Ok(QuantumState::new(n.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?));
        }
        let letter = label.chars().last().ok_or_else(bad)?;
        let digits = &label[..label.len() - letter.len_utf8()];
        let principal: u32 = digits.parse().map_err(|_| bad())?;
        let l = ORBITAL_LETTERS
            .iter()
            .position(|&c| c == letter.to_ascii_lowercase() as u8)
            .ok_or_else(bad)? as u32;
        if principal < l + 1 {
            return Err(bad());
        }
        Ok(QuantumState::new(principal - l - 1, l))
    }

    /// Principal quantum number `N = n + l + 1`.
    pub fn principal(&self) -> u32 {
        self.n + self.l + 1
    }

    /// Spectroscopic label, or `n=…,l=…` when `l` has no letter.
    pub fn label(&self) -> String {
        match ORBITAL_LETTERS.get(self.l as usize) {
            Some(&c) => format!("{}{}", self.principal(), c as char),
            None => format!("n={},l={}", self.n, self.l),
        }
    }

    pub(crate) fn l_term(&self) -> f64 {
        let l = self.l as f64;
        l * (l + 1.0)
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for QuantumState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuantumState::from_label(s)
    }
}
