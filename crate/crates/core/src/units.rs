// SPDX-License-Identifier: Apache-2.0

//! Conversions between spectroscopic units and the internal unit system.
//!
//! Internal units set ħ = 1 with energies in eV and lengths in Å. Momentum is
//! then measured in ħ/Å and mass in ħ²/(eV·Å²); the deformation parameter β
//! carries units of Å² (inverse momentum squared).
//!
//! Constants are CODATA 2018.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// ħc in eV·Å.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269804;

/// Atomic mass constant times c², in eV.
pub const AMU_C2_EV: f64 = 931.494_102_42e6;

/// Wavenumbers per electronvolt (cm⁻¹/eV).
pub const CM1_PER_EV: f64 = 8065.543937;

/// ħ in internal units.
pub const HBAR: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergyUnit {
    #[serde(rename = "cm-1")]
    Wavenumber,
    #[serde(rename = "eV")]
    ElectronVolt,
    #[serde(rename = "internal")]
    Internal,
}

impl EnergyUnit {
    pub fn label(self) -> &'static str {
        match self {
            EnergyUnit::Wavenumber => "cm-1",
            EnergyUnit::ElectronVolt => "eV",
            EnergyUnit::Internal => "internal",
        }
    }
}

impl fmt::Display for EnergyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EnergyUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "cm-1" | "cm^-1" | "1/cm" => Ok(EnergyUnit::Wavenumber),
            "eV" | "ev" => Ok(EnergyUnit::ElectronVolt),
            "internal" => Ok(EnergyUnit::Internal),
            other => Err(format!(
                "unknown energy unit `{other}` (expected cm-1, eV or internal)"
            )),
        }
    }
}

/// The fixed conversion table between external units and internal units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    /// Internal mass units per amu.
    pub mass_per_amu: f64,
    /// Internal energy units per eV.
    pub energy_per_ev: f64,
    /// Internal energy units per cm⁻¹.
    pub energy_per_wavenumber: f64,
    /// Internal length units per Å.
    pub length_per_angstrom: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl UnitSystem {
    pub const STANDARD: UnitSystem = UnitSystem {
        // m[ħ²/(eV Å²)] = m c² / (ħc)²
        mass_per_amu: AMU_C2_EV / (HBAR_C_EV_ANGSTROM * HBAR_C_EV_ANGSTROM),
        energy_per_ev: 1.0,
        energy_per_wavenumber: 1.0 / CM1_PER_EV,
        length_per_angstrom: 1.0,
    };

    pub fn mass_from_amu(&self, amu: f64) -> f64 {
        amu * self.mass_per_amu
    }

    pub fn mass_to_amu(&self, mass: f64) -> f64 {
        mass / self.mass_per_amu
    }

    pub fn length_from_angstrom(&self, angstrom: f64) -> f64 {
        angstrom * self.length_per_angstrom
    }

    pub fn length_to_angstrom(&self, length: f64) -> f64 {
        length / self.length_per_angstrom
    }

    pub fn energy_to_internal(&self, value: f64, unit: EnergyUnit) -> f64 {
        match unit {
            EnergyUnit::Wavenumber => value * self.energy_per_wavenumber,
            EnergyUnit::ElectronVolt => value * self.energy_per_ev,
            EnergyUnit::Internal => value,
        }
    }

    pub fn energy_from_internal(&self, value: f64, unit: EnergyUnit) -> f64 {
        match unit {
            EnergyUnit::Wavenumber => value / self.energy_per_wavenumber,
            EnergyUnit::ElectronVolt => value / self.energy_per_ev,
            EnergyUnit::Internal => value,
        }
    }
}
