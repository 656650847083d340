// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use mlspec::spectroscopy::{load_levels, load_molecules, parse_levels, parse_molecules};
use mlspec::{EnergyOrigin, Error, QuantumNumbers, UnitSystem};

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(file)
}

#[test]
fn bundled_molecules_load() {
    let units = UnitSystem::STANDARD;
    let file = load_molecules(&data("molecules.csv"), &units).unwrap();
    assert!(file.warnings.is_empty());
    let names: Vec<&str> = file.molecules.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["H2", "LiH", "HCl", "CO", "NO", "O2", "I2"]);
    for m in &file.molecules {
        assert!(m.gamma() > 20.0, "{} gamma {}", m.name, m.gamma());
    }
    let h2 = file.find("H2").unwrap();
    assert!((h2.gamma() - 25.08).abs() < 0.01);
    assert!((units.length_to_angstrom(h2.equilibrium_distance) - 0.7416).abs() < 1e-12);
}

#[test]
fn bundled_levels_load() {
    let units = UnitSystem::STANDARD;
    let levels = load_levels(&data("levels.csv"), &units).unwrap();
    let h2 = levels.iter().find(|l| l.molecule == "H2").unwrap();
    assert_eq!(h2.qn, QuantumNumbers::new(0, 0));
    assert_eq!(h2.origin, EnergyOrigin::Dissociation);
    assert!((h2.energy + 4.4781).abs() < 1e-12);
    assert!(h2.source.contains("Huber"));
}

#[test]
fn malformed_rows_report_their_line() {
    let units = UnitSystem::STANDARD;
    let path = Path::new("m.csv");
    let text = "# comment\n\nname,De_eV,re_angstrom,mu_amu\nAB,-1,1,1\n";
    match parse_molecules(text, path, &units) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
    let dup = "name,De_eV,re_angstrom,mu_amu\nAB,1,1,1\nAB,2,1,1\n";
    assert!(matches!(parse_molecules(dup, path, &units), Err(Error::Parse { line: 3, .. })));
    let short = "name,De_eV,re_angstrom,mu_amu\nAB,1,1\n";
    assert!(matches!(parse_molecules(short, path, &units), Err(Error::Parse { .. })));
    let header = "name,De,re,mu\nAB,1,1,1\n";
    assert!(matches!(parse_molecules(header, path, &units), Err(Error::Parse { .. })));
}

#[test]
fn level_units_and_origins() {
    let units = UnitSystem::STANDARD;
    let text = "molecule,n,l,energy,unit,origin,source\nAB,1,2,8065.543937,cm-1,minimum,x\n";
    let levels = parse_levels(text, Path::new("l.csv"), &units).unwrap();
    assert!((levels[0].energy - 1.0).abs() < 1e-12);
    assert_eq!(levels[0].origin, EnergyOrigin::Minimum);
    let bad = "molecule,n,l,energy,unit,origin,source\nAB,1,2,1.0,eV,top,x\n";
    assert!(matches!(parse_levels(bad, Path::new("l.csv"), &units), Err(Error::Parse { line: 2, .. })));
}

#[test]
fn missing_file_is_io_error() {
    let r = load_molecules(Path::new("/nonexistent/molecules.csv"), &UnitSystem::STANDARD);
    assert!(matches!(r, Err(Error::Io { .. })));
}
