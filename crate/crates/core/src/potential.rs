// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kratzer::{self, KratzerPotential};
use crate::model::{Deformation, EnergyLevel, Molecule, QuantumNumbers};
use crate::pho::{self, PhoPotential};
use crate::spectroscopy::{LevelTable, Provenance, SpectroscopicConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Kratzer,
    Pho,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 2] = [PotentialKind::Kratzer, PotentialKind::Pho];

    pub fn label(self) -> &'static str {
        match self {
            PotentialKind::Kratzer => "kratzer",
            PotentialKind::Pho => "pho",
        }
    }

    pub fn potential(self, m: &Molecule) -> MolecularPotential {
        match self {
            PotentialKind::Kratzer => MolecularPotential::Kratzer(KratzerPotential::from_molecule(m)),
            PotentialKind::Pho => MolecularPotential::Pho(PhoPotential::from_molecule(m)),
        }
    }

    /// Potential energy at rₑ: −Dₑ for Kratzer, 0 for the PHO.
    pub fn well_bottom(self, m: &Molecule) -> f64 {
        match self {
            PotentialKind::Kratzer => -m.dissociation_energy,
            PotentialKind::Pho => 0.0,
        }
    }

    pub fn energy_undeformed(self, m: &Molecule, qn: QuantumNumbers) -> f64 {
        match self {
            PotentialKind::Kratzer => kratzer::kratzer_energy_undeformed(m, qn),
            PotentialKind::Pho => pho::pho_energy_undeformed(m, qn),
        }
    }

    pub fn correction_coefficient(self, m: &Molecule, qn: QuantumNumbers) -> Result<f64> {
        match self {
            PotentialKind::Kratzer => kratzer::kratzer_correction_coefficient(m, qn),
            PotentialKind::Pho => pho::pho_correction_coefficient(m, qn),
        }
    }

    pub fn energy_deformed(self, m: &Molecule, d: Deformation, qn: QuantumNumbers) -> Result<EnergyLevel> {
        match self {
            PotentialKind::Kratzer => kratzer::kratzer_energy_deformed(m, d, qn),
            PotentialKind::Pho => pho::pho_energy_deformed(m, d, qn),
        }
    }

    pub fn energy_expansion(self, m: &Molecule, d: Deformation, qn: QuantumNumbers) -> f64 {
        match self {
            PotentialKind::Kratzer => kratzer::kratzer_energy_expansion(m, d, qn),
            PotentialKind::Pho => pho::pho_energy_expansion(m, d, qn),
        }
    }

    pub fn spectroscopic_constants(self, m: &Molecule, d: Deformation) -> SpectroscopicConstants {
        match self {
            PotentialKind::Kratzer => kratzer::kratzer_spectroscopic_constants(m, d),
            PotentialKind::Pho => pho::pho_spectroscopic_constants(m, d),
        }
    }

    /// Deformed spectrum for n ≤ `n_max`, ℓ ≤ `l_max`, n-major order.
    pub fn spectrum(self, m: &Molecule, d: Deformation, n_max: u32, l_max: u32) -> Result<Vec<EnergyLevel>> {
        let mut out = Vec::with_capacity(((n_max + 1) * (l_max + 1)) as usize);
        for n in 0..=n_max {
            for l in 0..=l_max {
                out.push(self.energy_deformed(m, d, QuantumNumbers::new(n, l))?);
            }
        }
        Ok(out)
    }

    /// Closed-form level table with energies measured from the well bottom,
    /// the origin the spectroscopic term formula uses.
    pub fn level_table(self, m: &Molecule, d: Deformation, n_max: u32, l_max: u32) -> Result<LevelTable> {
        let bottom = self.well_bottom(m);
        let entries = self
            .spectrum(m, d, n_max, l_max)?
            .into_iter()
            .map(|lvl| (lvl.qn, lvl.total - bottom))
            .collect();
        let provenance = match self {
            PotentialKind::Kratzer => Provenance::ComputedKratzer,
            PotentialKind::Pho => Provenance::ComputedPho,
        };
        LevelTable::new(m.name.clone(), entries, provenance)
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PotentialKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "kratzer" => Ok(PotentialKind::Kratzer),
            "pho" => Ok(PotentialKind::Pho),
            other => Err(format!("unknown potential `{other}` (expected kratzer or pho)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MolecularPotential {
    Kratzer(KratzerPotential),
    Pho(PhoPotential),
}

impl MolecularPotential {
    #[inline]
    pub fn at(&self, r: f64) -> f64 {
        match self {
            MolecularPotential::Kratzer(p) => p.at(r),
            MolecularPotential::Pho(p) => p.at(r),
        }
    }
}
