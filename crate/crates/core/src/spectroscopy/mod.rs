// SPDX-License-Identifier: Apache-2.0

//! Spectroscopic constants, least-squares extraction from level tables and
//! the minimal-length bound from an experimental level.
//!
//! Term formula (v = n + ½, J = ℓ(ℓ+1)):
//!
//! ```text
//! E = Y₀₀ + ωₑv − ωₑxₑv² + ωₑyₑv³ + BₑJ − αₑvJ
//! ```

mod bound;
mod data;

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::QuantumNumbers;

pub use bound::{fit_beta_bound, BetaBound};
pub use data::{
    load_levels, load_molecules, parse_levels, parse_molecules, EnergyOrigin, ExperimentalLevel,
    MoleculeFile, LEVELS_FILE, MOLECULES_FILE,
};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpectroscopicConstants {
    pub y00: f64,
    pub we: f64,
    pub wexe: f64,
    pub weye: f64,
    pub be: f64,
    pub alphae: f64,
}

impl SpectroscopicConstants {
    pub const NAMES: [&'static str; 6] = ["Y00", "we", "wexe", "weye", "Be", "alphae"];

    pub fn as_array(&self) -> [f64; 6] {
        [self.y00, self.we, self.wexe, self.weye, self.be, self.alphae]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        SpectroscopicConstants {
            y00: a[0],
            we: a[1],
            wexe: a[2],
            weye: a[3],
            be: a[4],
            alphae: a[5],
        }
    }

    pub fn energy(&self, qn: QuantumNumbers) -> f64 {
        let v = qn.v();
        let j = qn.j();
        self.y00 + self.we * v - self.wexe * v * v + self.weye * v * v * v + self.be * j
            - self.alphae * v * j
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_array(self.as_array().map(f))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|x| x * factor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ComputedKratzer,
    ComputedPho,
    Experimental,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelTable {
    pub molecule: String,
    pub entries: Vec<(QuantumNumbers, f64)>,
    pub provenance: Provenance,
}

/// Minimum table size for a full six-constant fit.
pub const MIN_ENTRIES: usize = 6;
pub const MIN_DISTINCT_N: usize = 3;
pub const MIN_DISTINCT_L: usize = 2;

impl LevelTable {
    pub fn new(
        molecule: impl Into<String>,
        entries: Vec<(QuantumNumbers, f64)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (qn, e) in &entries {
            if !seen.insert(*qn) {
                return Err(Error::Fit(format!("duplicate level {qn}")));
            }
            if !e.is_finite() {
                return Err(Error::Fit(format!("non-finite energy at {qn}")));
            }
        }
        Ok(LevelTable {
            molecule: molecule.into(),
            entries,
            provenance,
        })
    }

    pub fn distinct_n(&self) -> usize {
        self.entries.iter().map(|(q, _)| q.n).collect::<BTreeSet<_>>().len()
    }

    pub fn distinct_l(&self) -> usize {
        self.entries.iter().map(|(q, _)| q.l).collect::<BTreeSet<_>>().len()
    }

    fn coverage(&self) -> String {
        format!(
            "{} levels, {} distinct n, {} distinct l",
            self.entries.len(),
            self.distinct_n(),
            self.distinct_l()
        )
    }
}

/// Columns of the least-squares design matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitBasis {
    /// {1, v, v², v³, J, vJ}: exactly the six constants.
    #[default]
    Standard,
    /// Adds the next Dunham terms {v⁴, v²J, J²} as nuisance parameters so the
    /// six constants are not aliased by higher-order curvature in the data.
    Extended,
}

impl FitBasis {
    fn columns(self) -> usize {
        match self {
            FitBasis::Standard => 6,
            FitBasis::Extended => 9,
        }
    }

    fn row(self, qn: QuantumNumbers) -> Vec<f64> {
        let v = qn.v();
        let j = qn.j();
        // signs follow the term formula so coefficients come out as constants
        let mut row = vec![1.0, v, -v * v, v * v * v, j, -v * j];
        if self == FitBasis::Extended {
            row.extend([v.powi(4), v * v * j, j * j]);
        }
        row
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DunhamFit {
    pub constants: SpectroscopicConstants,
    /// Standard errors of the six constants (zero when the fit has no
    /// residual degrees of freedom).
    pub std_errors: SpectroscopicConstants,
    /// Coefficients of the extra columns, in order v⁴, v²J, J².
    pub higher_order: Vec<f64>,
    pub max_residual: f64,
    pub rms_residual: f64,
    pub basis: FitBasis,
}

/// Ordinary least squares of a level table onto the term formula, solved by
/// Householder QR on a column-equilibrated design matrix.
pub fn fit_dunham(t: &LevelTable, basis: FitBasis) -> Result<DunhamFit> {
    let p = basis.columns();
    if t.entries.len() < MIN_ENTRIES.max(p)
        || t.distinct_n() < MIN_DISTINCT_N
        || t.distinct_l() < MIN_DISTINCT_L
    {
        return Err(Error::Fit(format!(
            "table too small for a {p}-parameter fit ({}; need >= {} levels, {MIN_DISTINCT_N} distinct n, {MIN_DISTINCT_L} distinct l)",
            t.coverage(),
            MIN_ENTRIES.max(p),
        )));
    }

    let rows = t.entries.len();
    let mut a = DMatrix::<f64>::zeros(rows, p);
    let mut b = DVector::<f64>::zeros(rows);
    for (i, (qn, e)) in t.entries.iter().enumerate() {
        for (k, x) in basis.row(*qn).into_iter().enumerate() {
            a[(i, k)] = x;
        }
        b[i] = *e;
    }

    let scale: Vec<f64> = (0..p)
        .map(|k| {
            let s = a.column(k).amax();
            if s > 0.0 {
                s
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = a.clone();
    for (k, s) in scale.iter().enumerate() {
        scaled.column_mut(k).unscale_mut(*s);
    }

    let qr = scaled.qr();
    let r = qr.r();
    let rmax = r.diagonal().amax();
    for k in 0..p {
        if r[(k, k)].abs() <= 1e-10 * rmax {
            return Err(Error::Fit(format!(
                "design matrix is rank deficient in the `{}` column: {} do not constrain it ({})",
                column_name(basis, k),
                coverage_hint(k),
                t.coverage()
            )));
        }
    }
    let qtb = qr.q().transpose() * &b;
    let y = r
        .solve_upper_triangular(&qtb)
        .ok_or_else(|| Error::Fit("singular triangular factor".into()))?;
    let coeffs: Vec<f64> = y.iter().zip(&scale).map(|(c, s)| c / s).collect();

    let fitted = &a * DVector::from_vec(coeffs.clone());
    let resid = &b - fitted;
    let max_residual = resid.amax();
    let rms_residual = (resid.norm_squared() / rows as f64).sqrt();

    let dof = rows.saturating_sub(p);
    let mut se = [0.0; 6];
    if dof > 0 {
        let sigma2 = resid.norm_squared() / dof as f64;
        if let Some(rinv) = r.clone().try_inverse() {
            for (k, out) in se.iter_mut().enumerate() {
                let row_norm2 = rinv.row(k).norm_squared();
                *out = (sigma2 * row_norm2).sqrt() / scale[k];
            }
        }
    }

    Ok(DunhamFit {
        constants: SpectroscopicConstants::from_array([
            coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5],
        ]),
        std_errors: SpectroscopicConstants::from_array(se),
        higher_order: coeffs[6..].to_vec(),
        max_residual,
        rms_residual,
        basis,
    })
}

fn column_name(basis: FitBasis, k: usize) -> &'static str {
    const EXTRA: [&str; 3] = ["v^4", "v^2 J", "J^2"];
    match k {
        0..=5 => SpectroscopicConstants::NAMES[k],
        _ if basis == FitBasis::Extended => EXTRA[k - 6],
        _ => "?",
    }
}

fn coverage_hint(k: usize) -> &'static str {
    match k {
        0..=3 => "too few distinct vibrational levels n",
        4 | 8 => "too few distinct rotational levels l",
        5 | 7 => "too few distinct n among rotationally excited levels",
        _ => "the supplied levels",
    }
}
