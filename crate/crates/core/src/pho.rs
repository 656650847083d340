// SPDX-License-Identifier: Apache-2.0

//! Pseudoharmonic oscillator V(r) = Dₑ(r/rₑ − rₑ/r)².
//!
//! Without deformation the spectrum is exactly harmonic in n, so ωₑxₑ, ωₑyₑ
//! and αₑ vanish; the minimal length makes ωₑxₑ and αₑ nonzero and negative.
//!
//! Large-γ expansion of the correction (v = n + ½, w = ℓ + ½):
//!
//! ```text
//! ΔE / (βμDₑ²) = (24v² + 6)/γ² + (16vw² + 8v)/γ³ + O(γ⁻⁴)
//! ```
//!
//! so ωₑ picks up the factor (1 + 3μβDₑ/γ²). Note the single power of Dₑ:
//! the correction to ωₑ must have the dimension of energy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{gamma, lambda_pho, Deformation, EnergyLevel, Molecule, QuantumNumbers};
use crate::spectroscopy::SpectroscopicConstants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhoPotential {
    pub de: f64,
    pub re: f64,
}

impl PhoPotential {
    pub fn new(de: f64, re: f64) -> Result<Self> {
        if !(de.is_finite() && de > 0.0) {
            return Err(Error::invalid("De", de, "must be finite and > 0"));
        }
        if !(re.is_finite() && re > 0.0) {
            return Err(Error::invalid("re", re, "must be finite and > 0"));
        }
        Ok(PhoPotential { de, re })
    }

    pub fn from_molecule(m: &Molecule) -> Self {
        PhoPotential {
            de: m.dissociation_energy,
            re: m.equilibrium_distance,
        }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::invalid("r", r, "must be > 0"));
        }
        Ok(self.at(r))
    }

    #[inline]
    pub fn at(&self, r: f64) -> f64 {
        let s = r / self.re - self.re / r;
        self.de * s * s
    }
}

/// E⁰ = −2Dₑ(1 − (2n + 1 + λ)/γ).
pub fn pho_energy_undeformed(m: &Molecule, qn: QuantumNumbers) -> f64 {
    let g = gamma(m);
    let lam = lambda_pho(g, qn.l);
    -2.0 * m.dissociation_energy * (1.0 - (2.0 * f64::from(qn.n) + 1.0 + lam) / g)
}

/// ΔE/β from the closed form; requires λ > 1.
pub fn pho_correction_coefficient(m: &Molecule, qn: QuantumNumbers) -> Result<f64> {
    let g = gamma(m);
    let lam = lambda_pho(g, qn.l);
    if !(lam > 1.0) {
        return Err(Error::Domain {
            formula: "pho correction",
            lambda: lam,
            bound: 1.0,
        });
    }
    let n = f64::from(qn.n);
    let de = m.dissociation_energy;
    let e0 = pho_energy_undeformed(m, qn);
    let k = lam + 2.0 * n + 1.0;

    let bracket = e0 * e0 + 4.0 * de * e0 + 6.0 * de * de
        - (4.0 * de * de + 2.0 * de * e0) * k / g
        + de * de * (lam * lam + (6.0 * n + 3.0) * lam + 6.0 * n * (n + 1.0) + 2.0) / (g * g)
        - g * 2.0 * de * (2.0 * de + e0) / lam
        + de * de * g * g * k / (lam * (lam * lam - 1.0));
    Ok(4.0 * m.reduced_mass * bracket)
}

pub fn pho_energy_deformed(m: &Molecule, d: Deformation, qn: QuantumNumbers) -> Result<EnergyLevel> {
    let e0 = pho_energy_undeformed(m, qn);
    let coeff = pho_correction_coefficient(m, qn)?;
    Ok(EnergyLevel::new(qn, e0, d.beta * coeff))
}

/// Truncated 1/γ series: undeformed part through γ⁻², correction through γ⁻³.
pub fn pho_energy_expansion(m: &Molecule, d: Deformation, qn: QuantumNumbers) -> f64 {
    let c = pho_spectroscopic_constants(m, d);
    let v = qn.v();
    let j = qn.j();
    c.y00 + c.we * v - c.wexe * v * v + c.weye * v * v * v + c.be * j - c.alphae * v * j
}

pub fn pho_spectroscopic_constants(m: &Molecule, d: Deformation) -> SpectroscopicConstants {
    let g = gamma(m);
    let de = m.dissociation_energy;
    let mb = m.reduced_mass * d.beta;
    let (g2, g3) = (g * g, g * g * g);
    SpectroscopicConstants {
        y00: (0.25 + 6.0 * mb * de) * de / g2,
        we: 4.0 * de / g * (1.0 + 3.0 * mb * de / g2),
        wexe: -24.0 * mb * de * de / g2,
        weye: 0.0,
        be: de / g2,
        alphae: -16.0 * mb * de * de / g3,
    }
}
