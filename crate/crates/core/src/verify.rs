// SPDX-License-Identifier: Apache-2.0

//! Closed form against oracle over a grid of molecules and quantum numbers.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Deformation, Molecule, QuantumNumbers};
use crate::oracle::{
    p4_expectation, refine_to_tolerance, RadialFn, RadialGrid, RadialProblem, RefineOptions, DEFAULT_POINTS,
};
use crate::potential::PotentialKind;

/// Pass threshold for E⁰, relative.
pub const ENERGY_TOLERANCE: f64 = 1e-6;
/// Pass threshold for ΔE, relative.
pub const CORRECTION_TOLERANCE: f64 = 1e-4;
/// β used by the default sweep (internal units).
pub const DEFAULT_BETA: f64 = 1e-6;
pub const DEFAULT_GAMMAS: [f64; 2] = [20.0, 100.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub kinds: Vec<PotentialKind>,
    pub molecules: Vec<Molecule>,
    pub n_max: u32,
    pub l_max: u32,
    pub deformation: Deformation,
    /// Fixed coarsest grid size; disables adaptive refinement (two levels only).
    pub grid_points: Option<usize>,
    /// Fixed outer box edge in internal length units.
    pub r_max: Option<f64>,
    pub energy_tolerance: f64,
    pub correction_tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            kinds: PotentialKind::ALL.to_vec(),
            molecules: DEFAULT_GAMMAS
                .iter()
                .map(|&g| Molecule::with_gamma(g).expect("positive gamma"))
                .collect(),
            n_max: 3,
            l_max: 2,
            deformation: Deformation { beta: DEFAULT_BETA },
            grid_points: None,
            r_max: None,
            energy_tolerance: ENERGY_TOLERANCE,
            correction_tolerance: CORRECTION_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyCell {
    pub kind: PotentialKind,
    pub molecule: String,
    pub gamma: f64,
    pub qn: QuantumNumbers,
    pub e0_closed: f64,
    pub e0_oracle: Option<f64>,
    pub e0_rel_error: Option<f64>,
    /// Oracle's own relative error estimate for E⁰.
    pub e0_estimate: Option<f64>,
    pub de_closed: Option<f64>,
    pub de_oracle: Option<f64>,
    pub de_rel_error: Option<f64>,
    pub de_estimate: Option<f64>,
    pub levels: usize,
    pub e0_pass: bool,
    pub de_pass: bool,
    pub error: Option<String>,
}

impl VerifyCell {
    pub fn passed(&self) -> bool {
        self.e0_pass && self.de_pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub beta: f64,
    pub energy_tolerance: f64,
    pub correction_tolerance: f64,
    pub cells: Vec<VerifyCell>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.cells.iter().all(VerifyCell::passed)
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed()).count()
    }

    pub fn max_e0_error(&self) -> Option<f64> {
        max_of(self.cells.iter().map(|c| c.e0_rel_error))
    }

    pub fn max_de_error(&self) -> Option<f64> {
        max_of(self.cells.iter().map(|c| c.de_rel_error))
    }
}

fn max_of(it: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    it.flatten().fold(None, |a, x| Some(a.map_or(x, |a: f64| a.max(x))))
}

/// Relative difference; 0 against 0 counts as exact agreement.
pub fn relative_error(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else if want == 0.0 {
        f64::INFINITY
    } else {
        ((got - want) / want).abs()
    }
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.kinds.is_empty() || config.molecules.is_empty() {
        return Err(Error::Oracle("empty verification sweep".into()));
    }
    if let Some(p) = config.grid_points {
        if p < 4 {
            return Err(Error::invalid("grid_points", p as f64, "must be >= 4"));
        }
    }
    if let Some(r) = config.r_max {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::invalid("r_max", r, "must be finite and > 0"));
        }
    }
    let mut jobs = Vec::new();
    for &kind in &config.kinds {
        for m in &config.molecules {
            for n in 0..=config.n_max {
                for l in 0..=config.l_max {
                    jobs.push((kind, m, QuantumNumbers::new(n, l)));
                }
            }
        }
    }
    // collect() keeps the job order whatever the completion order
    let cells = jobs
        .par_iter()
        .map(|&(kind, m, qn)| verify_cell(config, kind, m, qn))
        .collect();
    Ok(VerifyReport {
        beta: config.deformation.beta,
        energy_tolerance: config.energy_tolerance,
        correction_tolerance: config.correction_tolerance,
        cells,
    })
}

struct OracleValue {
    energy: f64,
    energy_estimate: f64,
    p4: f64,
    p4_estimate: f64,
    levels: usize,
}

fn oracle_value(config: &VerifyConfig, kind: PotentialKind, m: &Molecule, qn: QuantumNumbers) -> Result<OracleValue> {
    let pot = kind.potential(m);
    let potential: RadialFn = Arc::new(move |r| pot.at(r));
    let mu = m.reduced_mass;
    let points = config.grid_points.unwrap_or(DEFAULT_POINTS);
    let mut problem = RadialProblem::auto(potential, qn.l, mu, qn.n, m.equilibrium_distance, points)?;
    if let Some(r_max) = config.r_max {
        let r_min = problem.grid.r_min.min(0.5 * r_max);
        problem.grid = RadialGrid::new(r_min, r_max, points)?;
    }

    if config.grid_points.is_some() || config.r_max.is_some() {
        // user-fixed grid: one Richardson step, no adaptivity
        let coarse = problem.solve(&problem.grid)?;
        let fine = problem.solve(&problem.grid.refined())?;
        let v = |s: &crate::oracle::RadialEigenstate| p4_expectation(s, |r| (problem.potential)(r), mu);
        let (pc, pf) = (v(&coarse), v(&fine));
        let energy = (4.0 * fine.energy - coarse.energy) / 3.0;
        let p4 = (4.0 * pf - pc) / 3.0;
        return Ok(OracleValue {
            energy,
            energy_estimate: relative_error(fine.energy, energy) / 3.0,
            p4,
            p4_estimate: relative_error(pf, p4) / 3.0,
            levels: 2,
        });
    }

    let opts = RefineOptions {
        tolerance: 0.01 * config.energy_tolerance.max(1e-6),
        p4_tolerance: Some(0.01 * config.correction_tolerance.max(1e-6)),
        max_levels: 8,
    };
    let r = refine_to_tolerance(&problem, &opts)?;
    Ok(OracleValue {
        energy: r.energy,
        energy_estimate: r.error_estimate,
        p4: r.p4.expect("p4 requested"),
        p4_estimate: r.p4_error_estimate.expect("p4 requested"),
        levels: r.levels.len(),
    })
}

fn verify_cell(config: &VerifyConfig, kind: PotentialKind, m: &Molecule, qn: QuantumNumbers) -> VerifyCell {
    let e0_closed = kind.energy_undeformed(m, qn);
    let de_closed = kind.energy_deformed(m, config.deformation, qn).map(|l| l.de);
    let mut cell = VerifyCell {
        kind,
        molecule: m.name.clone(),
        gamma: m.gamma(),
        qn,
        e0_closed,
        e0_oracle: None,
        e0_rel_error: None,
        e0_estimate: None,
        de_closed: de_closed.as_ref().ok().copied(),
        de_oracle: None,
        de_rel_error: None,
        de_estimate: None,
        levels: 0,
        e0_pass: false,
        de_pass: false,
        error: None,
    };
    if let Err(e) = &de_closed {
        cell.error = Some(e.to_string());
        return cell;
    }
    match oracle_value(config, kind, m, qn) {
        Ok(o) => {
            let de_oracle = config.deformation.beta / m.reduced_mass * o.p4;
            let e0_err = relative_error(o.energy, e0_closed);
            let de_err = relative_error(de_oracle, cell.de_closed.expect("checked"));
            cell.e0_oracle = Some(o.energy);
            cell.e0_rel_error = Some(e0_err);
            cell.e0_estimate = Some(o.energy_estimate);
            cell.de_oracle = Some(de_oracle);
            cell.de_rel_error = Some(de_err);
            cell.de_estimate = Some(o.p4_estimate);
            cell.levels = o.levels;
            cell.e0_pass = e0_err <= config.energy_tolerance;
            cell.de_pass = de_err <= config.correction_tolerance;
        }
        Err(e) => cell.error = Some(e.to_string()),
    }
    cell
}
