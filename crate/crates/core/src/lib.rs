// SPDX-License-Identifier: Apache-2.0

//! Vibration-rotation spectra of diatomic molecules when the Heisenberg
//! algebra is deformed to [X, P] = iħ(1 + βP²), which implies a minimal
//! length (ΔX)min = ħ√(5β).
//!
//! To first order in β the Hamiltonian gains a (β/μ)p⁴ term. For the Kratzer
//! and pseudoharmonic potentials the resulting energy shifts have closed
//! forms ([`kratzer`], [`pho`]); [`spectroscopy`] turns spectra into Dunham
//! constants and bounds β from measured levels; [`oracle`] solves the radial
//! equation numerically to check every closed form.
//!
//! ```
//! use mlspec::{Deformation, Molecule, PotentialKind, QuantumNumbers};
//!
//! let m = Molecule::unit();
//! let d = Deformation::new(1e-3).unwrap();
//! let level = PotentialKind::Kratzer
//!     .energy_deformed(&m, d, QuantumNumbers::new(0, 0))
//!     .unwrap();
//! assert_eq!(level.e0, -0.5);
//! assert!((level.de - 1e-3).abs() < 1e-15);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kratzer;
pub mod model;
pub mod oracle;
pub mod pho;
pub mod potential;
pub mod spectroscopy;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    beta_from_minimal_length, gamma, lambda_kratzer, lambda_pho, minimal_length, Deformation, EnergyLevel, Molecule,
    QuantumNumbers,
};
pub use potential::{MolecularPotential, PotentialKind};
pub use spectroscopy::{
    fit_beta_bound, fit_dunham, BetaBound, DunhamFit, EnergyOrigin, FitBasis, LevelTable, Provenance,
    SpectroscopicConstants,
};
pub use units::{EnergyUnit, UnitSystem};
