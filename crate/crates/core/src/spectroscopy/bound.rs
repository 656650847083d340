// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::EnergyOrigin;
use crate::error::{Error, Result};
use crate::model::{minimal_length, Deformation, Molecule, QuantumNumbers};
use crate::potential::PotentialKind;

/// Upper bound on β obtained by attributing a theory-experiment gap entirely
/// to the minimal-length correction. It is a bound, not a measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaBound {
    pub beta_upper: f64,
    /// ħ√(5·beta_upper), internal length units.
    pub minimal_length_upper: f64,
    /// E_exp − E_theory(β = 0), internal energy units.
    pub gap: f64,
    /// ΔE/β for the level.
    pub coefficient: f64,
    /// Whether the gap has the sign the correction would produce.
    pub sign_consistent: bool,
    pub basis: String,
}

pub fn fit_beta_bound(
    m: &Molecule,
    e_exp: f64,
    origin: EnergyOrigin,
    level: QuantumNumbers,
    kind: PotentialKind,
) -> Result<BetaBound> {
    if !e_exp.is_finite() {
        return Err(Error::invalid("e_exp", e_exp, "must be finite"));
    }
    // move the experimental value onto the formula's own energy origin
    let from_minimum = match origin {
        EnergyOrigin::Minimum => e_exp,
        EnergyOrigin::Dissociation => e_exp + m.dissociation_energy,
    };
    let e_native = from_minimum + kind.well_bottom(m);

    let e_theory = kind.energy_undeformed(m, level);
    let gap = e_native - e_theory;
    let coefficient = kind.correction_coefficient(m, level)?;

    let beta_upper = if gap == 0.0 {
        0.0
    } else if coefficient == 0.0 {
        return Err(Error::Fit(format!(
            "correction coefficient vanishes for {kind} {level}; the gap cannot bound beta"
        )));
    } else {
        gap.abs() / coefficient.abs()
    };
    let d = Deformation::new(beta_upper)?;

    Ok(BetaBound {
        beta_upper,
        minimal_length_upper: minimal_length(d),
        gap,
        coefficient,
        sign_consistent: gap == 0.0 || gap.signum() == coefficient.signum(),
        basis: format!(
            "{} {} of {}: |E_exp - E_theory(beta=0)| = {:.6e} attributed entirely to the minimal-length correction (dE/beta = {:.6e})",
            kind,
            level,
            m.name,
            gap.abs(),
            coefficient
        ),
    })
}
