// SPDX-License-Identifier: Apache-2.0

//! Line-oriented data files.
//!
//! Both files are CSV with a mandatory header row, one record per line. Lines
//! starting with `#` are comments, blank lines are skipped and whitespace
//! around fields is ignored.
//!
//! `molecules.csv`:
//!
//! ```text
//! name,De_eV,re_angstrom,mu_amu
//! H2,4.7446,0.7416,0.50391
//! ```
//!
//! `levels.csv`:
//!
//! ```text
//! molecule,n,l,energy,unit,origin,source
//! H2,0,0,-4.4781,eV,dissociation,"Huber & Herzberg (1979), D0"
//! ```
//!
//! `unit` is `eV` or `cm-1`; `origin` is `dissociation` (energy measured from
//! the dissociation limit) or `minimum` (measured from the bottom of the well).

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Molecule, QuantumNumbers};
use crate::units::{EnergyUnit, UnitSystem};

pub const MOLECULES_FILE: &str = "molecules.csv";
pub const LEVELS_FILE: &str = "levels.csv";

const MOLECULE_HEADER: [&str; 4] = ["name", "De_eV", "re_angstrom", "mu_amu"];
const LEVEL_HEADER: [&str; 7] = ["molecule", "n", "l", "energy", "unit", "origin", "source"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MoleculeFile {
    pub molecules: Vec<Molecule>,
    pub warnings: Vec<String>,
}

impl MoleculeFile {
    pub fn find(&self, name: &str) -> Option<&Molecule> {
        self.molecules.iter().find(|m| m.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyOrigin {
    Dissociation,
    Minimum,
}

impl FromStr for EnergyOrigin {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dissociation" => Ok(EnergyOrigin::Dissociation),
            "minimum" => Ok(EnergyOrigin::Minimum),
            other => Err(format!("unknown origin `{other}` (expected dissociation or minimum)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalLevel {
    pub molecule: String,
    pub qn: QuantumNumbers,
    /// Internal energy units.
    pub energy: f64,
    pub origin: EnergyOrigin,
    pub source: String,
}

pub fn load_molecules(path: &Path, units: &UnitSystem) -> Result<MoleculeFile> {
    let text = read(path)?;
    parse_molecules(&text, path, units)
}

pub fn load_levels(path: &Path, units: &UnitSystem) -> Result<Vec<ExperimentalLevel>> {
    let text = read(path)?;
    parse_levels(&text, path, units)
}

pub fn parse_molecules(text: &str, path: &Path, units: &UnitSystem) -> Result<MoleculeFile> {
    let mut out = MoleculeFile::default();
    let mut names = BTreeSet::new();
    let rows = records(text, path, &MOLECULE_HEADER)?;
    for (line, rec) in rows {
        let err = |field: &str, message: String| parse_error(path, line, field, message);
        let name = rec[0].to_owned();
        if name.is_empty() {
            return Err(err("name", "empty name".into()));
        }
        let de = positive_field(&rec, 1, MOLECULE_HEADER[1], path, line)?;
        let re = positive_field(&rec, 2, MOLECULE_HEADER[2], path, line)?;
        let mu = positive_field(&rec, 3, MOLECULE_HEADER[3], path, line)?;
        if !names.insert(name.clone()) {
            return Err(err("name", format!("duplicate molecule `{name}`")));
        }
        let m = Molecule::from_spectroscopic(name, de, re, mu, units)
            .map_err(|e| err("name", e.to_string()))?;
        out.molecules.push(m);
    }
    if out.molecules.is_empty() {
        out.warnings
            .push(format!("{}: no molecule records", path.display()));
    }
    Ok(out)
}

pub fn parse_levels(text: &str, path: &Path, units: &UnitSystem) -> Result<Vec<ExperimentalLevel>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, rec) in records(text, path, &LEVEL_HEADER)? {
        let err = |field: &str, message: String| parse_error(path, line, field, message);
        let molecule = rec[0].to_owned();
        if molecule.is_empty() {
            return Err(err("molecule", "empty name".into()));
        }
        let n: u32 = rec[1].parse().map_err(|e| err("n", format!("{e}")))?;
        let l: u32 = rec[2].parse().map_err(|e| err("l", format!("{e}")))?;
        let value: f64 = rec[3].parse().map_err(|e| err("energy", format!("{e}")))?;
        if !value.is_finite() {
            return Err(err("energy", "not finite".into()));
        }
        let unit: EnergyUnit = rec[4].parse().map_err(|e| err("unit", e))?;
        let origin: EnergyOrigin = rec[5].parse().map_err(|e| err("origin", e))?;
        let qn = QuantumNumbers::new(n, l);
        if !seen.insert((molecule.clone(), qn)) {
            return Err(err("molecule", format!("duplicate level {molecule} {qn}")));
        }
        out.push(ExperimentalLevel {
            molecule,
            qn,
            energy: units.energy_to_internal(value, unit),
            origin,
            source: rec[6].to_owned(),
        });
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse_error(path: &Path, line: u64, field: &str, message: String) -> Error {
    Error::Parse {
        path: PathBuf::from(path),
        line,
        field: field.to_owned(),
        message,
    }
}

fn positive_field(rec: &csv::StringRecord, i: usize, field: &str, path: &Path, line: u64) -> Result<f64> {
    let v: f64 = rec[i]
        .parse()
        .map_err(|e| parse_error(path, line, field, format!("`{}`: {e}", &rec[i])))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(parse_error(path, line, field, format!("{v} is out of range (must be > 0)")));
    }
    Ok(v)
}

/// Header-checked records with their 1-based line numbers. Each record sits
/// on one physical line; quoted fields may contain commas but not newlines.
fn records(text: &str, path: &Path, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut out = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx as u64 + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(trimmed.as_bytes());
        let rec = match reader.records().next() {
            Some(Ok(rec)) => rec,
            Some(Err(e)) => return Err(parse_error(path, line, "record", e.to_string())),
            None => continue,
        };
        if !saw_header {
            let got: Vec<&str> = rec.iter().collect();
            if got != header {
                return Err(parse_error(
                    path,
                    line,
                    "header",
                    format!("expected `{}`, found `{}`", header.join(","), got.join(",")),
                ));
            }
            saw_header = true;
            continue;
        }
        if rec.len() != header.len() {
            return Err(parse_error(
                path,
                line,
                "record",
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        out.push((line, rec));
    }
    Ok(out)
}
