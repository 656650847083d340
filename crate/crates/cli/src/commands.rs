// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};

use mlspec::spectroscopy::{load_levels, load_molecules, parse_levels, parse_molecules, LEVELS_FILE, MOLECULES_FILE};
use mlspec::verify::{relative_error, VerifyConfig, DEFAULT_BETA};
use mlspec::{
    beta_from_minimal_length, fit_beta_bound, fit_dunham, Deformation, EnergyOrigin, EnergyUnit, Error, Molecule,
    PotentialKind, QuantumNumbers, SpectroscopicConstants, UnitSystem,
};

use crate::output::{Cell, Table};
use crate::{
    Common, ConstantsArgs, FitBetaArgs, SpectrumArgs, VerifyArgs, EXIT_CONFIG, EXIT_DATA, EXIT_OTHER, EXIT_VERIFY,
    L_MAX_CAP, N_MAX_CAP,
};

const BUNDLED_MOLECULES: &str = include_str!("../../../data/molecules.csv");
const BUNDLED_LEVELS: &str = include_str!("../../../data/levels.csv");

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. } => EXIT_CONFIG,
            Error::Parse { .. } | Error::Io { .. } | Error::MissingRecord { .. } => EXIT_DATA,
            Error::Domain { .. } | Error::Oracle(_) | Error::NonConvergence { .. } | Error::Fit(_) => EXIT_OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_OTHER,
            message: format!("writing output: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

const UNITS: UnitSystem = UnitSystem::STANDARD;

fn check_caps(nmax: u32, lmax: u32) -> CliResult<()> {
    if nmax > N_MAX_CAP {
        return Err(CliError::config(format!("--nmax {nmax} exceeds the cap of {N_MAX_CAP}")));
    }
    if lmax > L_MAX_CAP {
        return Err(CliError::config(format!("--lmax {lmax} exceeds the cap of {L_MAX_CAP}")));
    }
    Ok(())
}

fn deformation(beta: Option<f64>, min_length: Option<f64>, default: f64) -> CliResult<Deformation> {
    match (beta, min_length) {
        (Some(b), _) => Deformation::new(b).map_err(|e| CliError::config(e.to_string())),
        (None, Some(x)) => {
            beta_from_minimal_length(UNITS.length_from_angstrom(x)).map_err(|e| CliError::config(e.to_string()))
        }
        (None, None) => Ok(Deformation { beta: default }),
    }
}

fn data_file(explicit: Option<&Path>, dir: Option<&Path>, name: &str) -> Option<PathBuf> {
    explicit
        .map(Path::to_owned)
        .or_else(|| dir.map(|d| d.join(name)))
}

fn resolve_molecule(name: &str, file: Option<&Path>, dir: Option<&Path>) -> CliResult<Molecule> {
    if name == "synthetic" {
        return Ok(Molecule::unit());
    }
    if let Some(g) = name.strip_prefix("synthetic:") {
        let gamma: f64 = g
            .parse()
            .map_err(|_| CliError::config(format!("`{g}` in --molecule {name} is not a number")))?;
        return Molecule::with_gamma(gamma).map_err(|e| CliError::config(e.to_string()));
    }
    let table = match data_file(file, dir, MOLECULES_FILE) {
        Some(path) => load_molecules(&path, &UNITS)?,
        None => parse_molecules(BUNDLED_MOLECULES, Path::new("<bundled>/molecules.csv"), &UNITS)?,
    };
    for w in &table.warnings {
        eprintln!("mlspec: warning: {w}");
    }
    table.find(name).cloned().ok_or_else(|| {
        let known: Vec<&str> = table.molecules.iter().map(|m| m.name.as_str()).collect();
        CliError::data(format!(
            "unknown molecule `{name}` (known: synthetic, synthetic:GAMMA{}{})",
            if known.is_empty() { "" } else { ", " },
            known.join(", ")
        ))
    })
}

fn common_molecule(c: &Common) -> CliResult<Molecule> {
    resolve_molecule(&c.molecule, c.molecules_file.as_deref(), c.data_dir.as_deref())
}

fn energy(x: f64, unit: EnergyUnit) -> Cell {
    Cell::Num(UNITS.energy_from_internal(x, unit))
}

pub fn spectrum<W: Write>(a: &SpectrumArgs, out: &mut W) -> CliResult<u8> {
    check_caps(a.nmax, a.lmax)?;
    let m = common_molecule(&a.common)?;
    let d = deformation(a.common.beta, a.common.min_length_angstrom, 0.0)?;
    let kind = PotentialKind::from(a.potential);
    let unit = EnergyUnit::from(a.common.units);
    let levels = kind
        .spectrum(&m, d, a.nmax, a.lmax)
        .map_err(|e| CliError::from(e).context(&format!("{kind} spectrum of {}", m.name)))?;

    let mut t = Table::new(vec!["n", "l", "e0", "de", "e", "unit"]);
    let mut flagged = 0;
    for lvl in &levels {
        if lvl.exceeds_first_order() {
            flagged += 1;
        }
        t.push(vec![
            lvl.qn.n.into(),
            lvl.qn.l.into(),
            energy(lvl.e0, unit),
            energy(lvl.de, unit),
            energy(lvl.total, unit),
            unit.label().into(),
        ]);
    }
    if flagged > 0 {
        eprintln!(
            "mlspec: warning: {flagged} level(s) have |dE| > 0.1 |E0 - E0(n-1)|; first-order perturbation theory is doubtful there"
        );
    }
    t.write(out, a.common.format)?;
    Ok(0)
}

impl CliError {
    fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

pub fn constants<W: Write>(a: &ConstantsArgs, out: &mut W) -> CliResult<u8> {
    check_caps(a.nmax, a.lmax)?;
    let m = common_molecule(&a.common)?;
    let d = deformation(a.common.beta, a.common.min_length_angstrom, 0.0)?;
    let kind = PotentialKind::from(a.potential);
    let unit = EnergyUnit::from(a.common.units);
    let closed = kind.spectroscopic_constants(&m, d);

    let fit = if a.fit {
        let table = kind.level_table(&m, d, a.nmax, a.lmax)?;
        let fit = fit_dunham(&table, a.basis.into())?;
        eprintln!(
            "mlspec: fit of {} levels ({:?} basis): max residual {:e} {}",
            table.entries.len(),
            fit.basis,
            UNITS.energy_from_internal(fit.max_residual, unit),
            unit
        );
        Some(fit)
    } else {
        None
    };

    let mut header = vec!["constant", "closed"];
    if fit.is_some() {
        header.extend(["fitted", "std_error", "abs_diff", "rel_diff"]);
    }
    header.push("unit");
    let mut t = Table::new(header);
    let names = SpectroscopicConstants::NAMES;
    for (k, c) in closed.as_array().into_iter().enumerate() {
        let mut row: Vec<Cell> = vec![names[k].into(), energy(c, unit)];
        if let Some(f) = &fit {
            let v = f.constants.as_array()[k];
            row.push(energy(v, unit));
            row.push(energy(f.std_errors.as_array()[k], unit));
            row.push(energy((v - c).abs(), unit));
            // undefined against an exact zero
            row.push(if c == 0.0 { Cell::Empty } else { relative_error(v, c).into() });
        }
        row.push(unit.label().into());
        t.push(row);
    }
    t.write(out, a.common.format)?;
    Ok(0)
}

pub fn verify<W: Write>(a: &VerifyArgs, out: &mut W) -> CliResult<u8> {
    check_caps(a.nmax, a.lmax)?;
    let d = deformation(a.beta, a.min_length_angstrom, DEFAULT_BETA)?;
    let unit = EnergyUnit::from(a.units);
    let molecules = match &a.molecule {
        Some(name) => vec![resolve_molecule(name, a.molecules_file.as_deref(), a.data_dir.as_deref())?],
        None => a
            .gamma
            .iter()
            .map(|&g| Molecule::with_gamma(g).map_err(|e| CliError::config(e.to_string())))
            .collect::<CliResult<_>>()?,
    };
    if let Some(p) = a.grid_points {
        if p < 4 {
            return Err(CliError::config(format!("--grid-points {p} must be at least 4")));
        }
    }
    let config = VerifyConfig {
        kinds: a.potential.map_or_else(|| PotentialKind::ALL.to_vec(), |p| vec![p.into()]),
        molecules,
        n_max: a.nmax,
        l_max: a.lmax,
        deformation: d,
        grid_points: a.grid_points,
        r_max: a.rmax.map(|r| UNITS.length_from_angstrom(r)),
        ..VerifyConfig::default()
    };
    let report = mlspec::verify::verify(&config)?;

    let mut t = Table::new(vec![
        "potential",
        "molecule",
        "gamma",
        "n",
        "l",
        "e0_closed",
        "e0_oracle",
        "e0_rel_error",
        "e0_estimate",
        "de_closed",
        "de_oracle",
        "de_rel_error",
        "de_estimate",
        "levels",
        "status",
        "error",
        "unit",
    ]);
    let opt_energy = |x: Option<f64>| x.map_or(Cell::Empty, |x| energy(x, unit));
    for c in &report.cells {
        t.push(vec![
            c.kind.label().into(),
            c.molecule.clone().into(),
            c.gamma.into(),
            c.qn.n.into(),
            c.qn.l.into(),
            energy(c.e0_closed, unit),
            opt_energy(c.e0_oracle),
            c.e0_rel_error.into(),
            c.e0_estimate.into(),
            opt_energy(c.de_closed),
            opt_energy(c.de_oracle),
            c.de_rel_error.into(),
            c.de_estimate.into(),
            c.levels.into(),
            if c.passed() { "PASS" } else { "FAIL" }.into(),
            c.error.clone().into(),
            unit.label().into(),
        ]);
    }
    t.write(&mut *out, a.format)?;

    let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_owned(), |x| format!("{x:.2e}"));
    eprintln!(
        "mlspec: verify: {}/{} cells passed (tolerances E0 {:.0e}, dE {:.0e}); max rel error E0 {}, dE {}",
        report.cells.len() - report.failures(),
        report.cells.len(),
        report.energy_tolerance,
        report.correction_tolerance,
        fmt(report.max_e0_error()),
        fmt(report.max_de_error()),
    );
    Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
}

pub fn fit_beta<W: Write>(a: &FitBetaArgs, out: &mut W) -> CliResult<u8> {
    let c = &a.common;
    if c.beta.is_some() || c.min_length_angstrom.is_some() {
        return Err(CliError::config("fit-beta derives beta; --beta and --min-length-angstrom do not apply"));
    }
    let m = common_molecule(c)?;
    let kind = PotentialKind::from(a.potential);
    let unit = EnergyUnit::from(c.units);
    let qn = QuantumNumbers::new(a.n, a.l);

    let (e_exp, origin, source) = match a.energy {
        Some(e) => (UNITS.energy_to_internal(e, unit), EnergyOrigin::from(a.origin), "--energy".to_owned()),
        None => {
            let levels = match data_file(a.levels_file.as_deref(), c.data_dir.as_deref(), LEVELS_FILE) {
                Some(path) => load_levels(&path, &UNITS)?,
                None => parse_levels(BUNDLED_LEVELS, Path::new("<bundled>/levels.csv"), &UNITS)?,
            };
            let rec = levels
                .into_iter()
                .find(|l| l.molecule == m.name && l.qn == qn)
                .ok_or_else(|| Error::MissingRecord {
                    molecule: m.name.clone(),
                    qn,
                })?;
            (rec.energy, rec.origin, rec.source)
        }
    };

    let b = fit_beta_bound(&m, e_exp, origin, qn, kind)?;
    if !b.sign_consistent {
        eprintln!("mlspec: warning: the gap has the opposite sign to the correction; the bound is formal");
    }
    let e_theory = kind.energy_undeformed(&m, qn);
    let mut t = Table::new(vec![
        "molecule",
        "potential",
        "n",
        "l",
        "e_experiment",
        "e_theory",
        "gap",
        "de_per_beta",
        "beta_upper",
        "min_length_angstrom",
        "sign_consistent",
        "unit",
        "source",
        "basis",
    ]);
    t.push(vec![
        m.name.clone().into(),
        kind.label().into(),
        qn.n.into(),
        qn.l.into(),
        energy(e_theory + b.gap, unit),
        energy(e_theory, unit),
        energy(b.gap, unit),
        energy(b.coefficient, unit),
        b.beta_upper.into(),
        UNITS.length_to_angstrom(b.minimal_length_upper).into(),
        b.sign_consistent.into(),
        unit.label().into(),
        source.into(),
        b.basis.clone().into(),
    ]);
    t.write(out, c.format)?;
    Ok(0)
}
