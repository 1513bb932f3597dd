//! Bound states of the Manning-Rosen potential.
//!
//! Closed-form energies and Jacobi-polynomial wavefunctions obtained with the
//! approximation `1/r² ≈ (1/b²) e^{-r/b}/(1 - e^{-r/b})²`, an independent
//! Numerov eigensolver for both the exact and approximated radial operator,
//! and the harness that regenerates the diatomic energy tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod molecules;
pub mod numerov;
pub mod potential;
pub mod quadrature;
pub mod special;
pub mod spectrum;
pub mod state;
pub mod tables;
pub mod units;
pub mod wavefunction;

pub use error::{Error, Result};
pub use potential::{Centrifugal, PotentialParams};
pub use state::QuantumState;
pub use units::{UnitMode, UnitSystem};
