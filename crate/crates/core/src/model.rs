// SPDX-License-Identifier: Apache-2.0

//! Molecule parameters, the deformation parameter and the dimensionless
//! quantities (γ, λ) shared by both potentials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{UnitSystem, HBAR};

/// A diatomic molecule in internal units (ħ = 1, eV, Å).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    pub name: String,
    /// Dₑ, depth of the well.
    pub dissociation_energy: f64,
    /// rₑ, position of the well minimum.
    pub equilibrium_distance: f64,
    /// μ, reduced mass of the nuclei.
    pub reduced_mass: f64,
}

impl Molecule {
    pub fn new(
        name: impl Into<String>,
        dissociation_energy: f64,
        equilibrium_distance: f64,
        reduced_mass: f64,
    ) -> Result<Self> {
        positive("dissociation_energy", dissociation_energy)?;
        positive("equilibrium_distance", equilibrium_distance)?;
        positive("reduced_mass", reduced_mass)?;
        let m = Molecule {
            name: name.into(),
            dissociation_energy,
            equilibrium_distance,
            reduced_mass,
        };
        let g = m.gamma();
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::invalid("gamma", g, "must be finite and positive"));
        }
        Ok(m)
    }

    /// Builds a molecule from tabulated spectroscopic values (eV, Å, amu).
    pub fn from_spectroscopic(
        name: impl Into<String>,
        de_ev: f64,
        re_angstrom: f64,
        mu_amu: f64,
        units: &UnitSystem,
    ) -> Result<Self> {
        Molecule::new(
            name,
            units.energy_to_internal(de_ev, crate::units::EnergyUnit::ElectronVolt),
            units.length_from_angstrom(re_angstrom),
            units.mass_from_amu(mu_amu),
        )
    }

    /// Dₑ = rₑ = μ = 1, so that γ = √2.
    pub fn unit() -> Self {
        Molecule {
            name: "synthetic".to_owned(),
            dissociation_energy: 1.0,
            equilibrium_distance: 1.0,
            reduced_mass: 1.0,
        }
    }

    /// A dimensionless test molecule with Dₑ = rₑ = 1 and μ = γ²/2.
    pub fn with_gamma(gamma: f64) -> Result<Self> {
        positive("gamma", gamma)?;
        Molecule::new(format!("synthetic:{gamma}"), 1.0, 1.0, 0.5 * gamma * gamma)
    }

    /// γ = rₑ√(2μDₑ)/ħ.
    pub fn gamma(&self) -> f64 {
        gamma(self)
    }
}

/// γ = rₑ√(2μDₑ)/ħ; the same value enters both potentials.
pub fn gamma(m: &Molecule) -> f64 {
    m.equilibrium_distance * (2.0 * m.reduced_mass * m.dissociation_energy).sqrt() / HBAR
}

/// λ for the Kratzer potential: ½ + √((ℓ+½)² + γ²).
pub fn lambda_kratzer(gamma: f64, l: u32) -> f64 {
    let w = f64::from(l) + 0.5;
    0.5 + w.hypot(gamma)
}

/// λ for the pseudoharmonic oscillator: √(γ² + (ℓ+½)²).
pub fn lambda_pho(gamma: f64, l: u32) -> f64 {
    let w = f64::from(l) + 0.5;
    w.hypot(gamma)
}

/// The GUP deformation parameter β, in Å² (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Deformation {
    pub beta: f64,
}

impl Deformation {
    pub const NONE: Deformation = Deformation { beta: 0.0 };

    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::invalid("beta", beta, "must be finite and >= 0"));
        }
        Ok(Deformation { beta })
    }

    pub fn minimal_length(&self) -> f64 {
        minimal_length(*self)
    }
}

/// (ΔX)min = ħ√(5β) for the representation P = p(1 + βp²).
pub fn minimal_length(d: Deformation) -> f64 {
    HBAR * (5.0 * d.beta).sqrt()
}

/// Inverse of [`minimal_length`]: β = x²/(5ħ²).
pub fn beta_from_minimal_length(x: f64) -> Result<Deformation> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(
            "minimal_length",
            x,
            "must be finite and >= 0",
        ));
    }
    Deformation::new(x * x / (5.0 * HBAR * HBAR))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// Vibrational (radial) quantum number.
    pub n: u32,
    /// Rotational (orbital) quantum number.
    pub l: u32,
}

impl QuantumNumbers {
    pub const fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }

    /// n + ½
    pub fn v(&self) -> f64 {
        f64::from(self.n) + 0.5
    }

    /// ℓ(ℓ+1)
    pub fn j(&self) -> f64 {
        let l = f64::from(self.l);
        l * (l + 1.0)
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

/// Ratio |ΔE|/|E⁰| above which first-order perturbation theory is flagged.
pub const FIRST_ORDER_WARNING_RATIO: f64 = 0.1;

/// One level of a deformed spectrum: `total == e0 + de` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub e0: f64,
    pub de: f64,
    pub total: f64,
}

impl EnergyLevel {
    pub fn new(qn: QuantumNumbers, e0: f64, de: f64) -> Self {
        EnergyLevel {
            qn,
            e0,
            de,
            total: e0 + de,
        }
    }

    /// True when the correction is too large for first-order perturbation
    /// theory to be trusted. Computation is not blocked.
    pub fn exceeds_first_order(&self) -> bool {
        self.de.abs() > FIRST_ORDER_WARNING_RATIO * self.e0.abs()
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "must be finite and > 0"))
    }
}
