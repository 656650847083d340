// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and asserts
//! the same condition; every tolerance is pinned below.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mlspec::kratzer::kratzer_correction_coefficient;
use mlspec::oracle::{refine_to_tolerance, RadialProblem, RefineOptions, DEFAULT_POINTS};
use mlspec::spectroscopy::{load_levels, load_molecules};
use mlspec::verify::{verify, VerifyConfig, VerifyReport};
use mlspec::{
    beta_from_minimal_length, fit_beta_bound, fit_dunham, minimal_length, Deformation, FitBasis, Molecule,
    PotentialKind, QuantumNumbers, UnitSystem,
};

const UNDEFORMED_TOLERANCE: f64 = 1e-6;
const CORRECTION_TOLERANCE: f64 = 1e-4;
const SWEEP_BETA: f64 = 1e-6;
const SWEEP_RUNTIME_LIMIT: Duration = Duration::from_secs(60);
const EXACT_POINT_ORACLE_TOLERANCE: f64 = 1e-4;
const EXACT_POINT_CLOSED_TOLERANCE: f64 = 1e-14;
const SLOPE_TARGET: f64 = 4.0;
const SLOPE_TOLERANCE: f64 = 0.3;
const SLOPE_GAMMAS: [f64; 5] = [50.0, 100.0, 200.0, 400.0, 800.0];
const ROUND_TRIP_GAMMA: f64 = 200.0;
const ROUND_TRIP_BETA: f64 = 1e-6;
const ROUND_TRIP_TOLERANCE: f64 = 1e-2;
/// Fitted values of constants that vanish identically must stay below this
/// fraction of ωₑ.
const ZERO_CONSTANT_FLOOR: f64 = 1e-9;
const FIT_N_MAX: u32 = 5;
const FIT_L_MAX: u32 = 5;
const PUBLISHED_MIN_LENGTH_ANGSTROM: f64 = 0.01;
const ORDER_OF_MAGNITUDE: f64 = 10.0;
const MIN_LENGTH_ROUND_TRIP: f64 = 1e-12;
const COULOMB_TOLERANCE: f64 = 1e-6;
const ORDER_RANGE: (f64, f64) = (1.8, 2.2);

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!("{} criterion {id}: {name} ({detail})", if pass { "PASS" } else { "FAIL" });
}

fn sweep() -> (VerifyReport, Duration) {
    let config = VerifyConfig {
        deformation: Deformation::new(SWEEP_BETA).unwrap(),
        energy_tolerance: UNDEFORMED_TOLERANCE,
        correction_tolerance: CORRECTION_TOLERANCE,
        ..VerifyConfig::default()
    };
    assert_eq!(config.n_max, 3);
    assert_eq!(config.l_max, 2);
    let t = Instant::now();
    let r = verify(&config).unwrap();
    (r, t.elapsed())
}

fn failures(r: &VerifyReport, pick: impl Fn(&mlspec::verify::VerifyCell) -> bool) -> Vec<String> {
    r.cells
        .iter()
        .filter(|c| !pick(c))
        .map(|c| format!("{} gamma={} {} {:?}", c.kind, c.gamma, c.qn, c.error))
        .collect()
}

#[test]
fn criterion_1_undeformed_closed_forms_match_oracle() {
    let (r, elapsed) = sweep();
    let bad = failures(&r, |c| c.e0_pass);
    let max = r.max_e0_error().unwrap_or(f64::INFINITY);
    let pass = bad.is_empty() && r.cells.len() == 48 && elapsed < SWEEP_RUNTIME_LIMIT;
    report(
        1,
        "undeformed spectra vs oracle",
        pass,
        &format!(
            "{} cells, max rel error {max:.2e} <= {UNDEFORMED_TOLERANCE:.0e}, sweep {:.1} s",
            r.cells.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "failing cells: {bad:?}");
}

#[test]
fn criterion_2_corrections_match_oracle() {
    let (r, _) = sweep();
    let bad = failures(&r, |c| c.de_pass);
    let max = r.max_de_error().unwrap_or(f64::INFINITY);
    let pass = bad.is_empty() && r.beta == SWEEP_BETA;
    report(
        2,
        "minimal-length corrections vs 4 mu beta <(E-V)^2>",
        pass,
        &format!("{} cells, max rel error {max:.2e} <= {CORRECTION_TOLERANCE:.0e}", r.cells.len()),
    );
    assert!(pass, "failing cells: {bad:?}");
}

#[test]
fn criterion_3_synthetic_exact_point() {
    let m = Molecule::unit();
    let q = QuantumNumbers::new(0, 0);
    let e0 = PotentialKind::Kratzer.energy_undeformed(&m, q);
    let coeff = kratzer_correction_coefficient(&m, q).unwrap();

    let pot = PotentialKind::Kratzer.potential(&m);
    let problem = RadialProblem::auto(Arc::new(move |r| pot.at(r)), 0, 1.0, 0, 1.0, DEFAULT_POINTS).unwrap();
    let opts = RefineOptions {
        tolerance: 1e-8,
        p4_tolerance: Some(1e-6),
        max_levels: 9,
    };
    let refined = refine_to_tolerance(&problem, &opts).unwrap();
    let oracle_e0 = refined.energy;
    let oracle_coeff = refined.p4.unwrap() / m.reduced_mass;

    let e_err = ((oracle_e0 - e0) / e0).abs();
    let c_err = (oracle_coeff - coeff).abs();
    let pass = e0 == -0.5
        && (coeff - 1.0).abs() <= EXACT_POINT_CLOSED_TOLERANCE
        && e_err <= EXACT_POINT_ORACLE_TOLERANCE
        && c_err <= EXACT_POINT_ORACLE_TOLERANCE;
    report(
        3,
        "unit molecule E00 = -1/2, dE00/beta = 1",
        pass,
        &format!("closed {e0} / {coeff}; oracle {oracle_e0:.9} / {oracle_coeff:.9}"),
    );
    assert!(pass);
}

/// Least-squares slope of ln|y| against ln x.
fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn criterion_4_expansion_remainder_order() {
    // undeformed Kratzer series: the γ⁻⁴ coefficient −5v⁴ + 6v²w² − w⁴ vanishes
    // at n = ℓ, so the levels are taken with n ≠ ℓ
    let mut slopes = Vec::new();
    let mut ok = true;
    for (n, l) in [(1, 0), (2, 1), (3, 0)] {
        let q = QuantumNumbers::new(n, l);
        let rem: Vec<f64> = SLOPE_GAMMAS
            .iter()
            .map(|&g| {
                let m = Molecule::with_gamma(g).unwrap();
                PotentialKind::Kratzer.energy_undeformed(&m, q)
                    - PotentialKind::Kratzer.energy_expansion(&m, Deformation::NONE, q)
            })
            .collect();
        let s = -loglog_slope(&SLOPE_GAMMAS, &rem);
        ok &= (s - SLOPE_TARGET).abs() <= SLOPE_TOLERANCE;
        slopes.push(format!("kratzer0 {q}: {s:.3}"));
    }
    // β parts of both potentials, normalized by βμDₑ²
    for kind in PotentialKind::ALL {
        for (n, l) in [(0, 0), (2, 1)] {
            let q = QuantumNumbers::new(n, l);
            let rem: Vec<f64> = SLOPE_GAMMAS
                .iter()
                .map(|&g| {
                    let m = Molecule::with_gamma(g).unwrap();
                    let d = Deformation::new(1.0).unwrap();
                    let closed = kind.correction_coefficient(&m, q).unwrap();
                    let series =
                        kind.energy_expansion(&m, d, q) - kind.energy_expansion(&m, Deformation::NONE, q);
                    (closed - series) / (m.reduced_mass * m.dissociation_energy.powi(2))
                })
                .collect();
            let s = -loglog_slope(&SLOPE_GAMMAS, &rem);
            ok &= (s - SLOPE_TARGET).abs() <= SLOPE_TOLERANCE;
            slopes.push(format!("{kind} beta {q}: {s:.3}"));
        }
    }
    report(
        4,
        "1/gamma expansions leave a gamma^-4 remainder",
        ok,
        &format!("slopes {} (target {SLOPE_TARGET} +/- {SLOPE_TOLERANCE})", slopes.join(", ")),
    );
    assert!(ok, "{slopes:?}");
}

#[test]
fn criterion_5_constants_round_trip() {
    let m = Molecule::with_gamma(ROUND_TRIP_GAMMA).unwrap();
    let d = Deformation::new(ROUND_TRIP_BETA).unwrap();
    let names = mlspec::SpectroscopicConstants::NAMES;
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    let mut fitted = Vec::new();
    for kind in PotentialKind::ALL {
        for deformation in [Deformation::NONE, d] {
            let table = kind.level_table(&m, deformation, FIT_N_MAX, FIT_L_MAX).unwrap();
            let fit = fit_dunham(&table, FitBasis::Extended).unwrap();
            let closed = kind.spectroscopic_constants(&m, deformation);
            let floor = ZERO_CONSTANT_FLOOR * closed.we.abs();
            for k in 0..6 {
                let (c, f) = (closed.as_array()[k], fit.constants.as_array()[k]);
                if c == 0.0 {
                    if f.abs() > floor {
                        ok = false;
                        notes.push(format!("{kind} beta={} {}: {f:e} should vanish", deformation.beta, names[k]));
                    }
                } else {
                    let rel = ((f - c) / c).abs();
                    worst = worst.max(rel);
                    if rel > ROUND_TRIP_TOLERANCE {
                        ok = false;
                        notes.push(format!("{kind} beta={} {}: rel {rel:.2e}", deformation.beta, names[k]));
                    }
                }
            }
            fitted.push((kind, deformation.beta, fit.constants));
        }
    }
    // Kratzer Be does not depend on β
    let be0 = fitted[0].2.be;
    let be1 = fitted[1].2.be;
    let be_shift = ((be1 - be0) / be0).abs();
    if be_shift > ROUND_TRIP_TOLERANCE {
        ok = false;
        notes.push(format!("kratzer Be moved by {be_shift:.2e}"));
    }
    // PHO ωₑxₑ and αₑ turn negative once β > 0
    let pho = fitted[3].2;
    if !(pho.wexe < 0.0 && pho.alphae < 0.0) {
        ok = false;
        notes.push(format!("pho wexe {:e}, alphae {:e} not negative", pho.wexe, pho.alphae));
    }
    report(
        5,
        "Dunham fit recovers the closed-form constants",
        ok,
        &format!(
            "gamma {ROUND_TRIP_GAMMA}, beta {ROUND_TRIP_BETA:e}: worst rel {worst:.2e} <= {ROUND_TRIP_TOLERANCE:.0e}; kratzer Be shift {be_shift:.1e}; pho wexe {:.3e}, alphae {:.3e}{}",
            pho.wexe,
            pho.alphae,
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    );
    assert!(ok, "{notes:?}");
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn criterion_6_h2_minimal_length_bound() {
    let units = UnitSystem::STANDARD;
    let molecules = load_molecules(&data_dir().join("molecules.csv"), &units).unwrap();
    let h2 = molecules.find("H2").expect("H2 in the bundled table").clone();
    let levels = load_levels(&data_dir().join("levels.csv"), &units).unwrap();
    let q = QuantumNumbers::new(0, 0);
    let e00 = levels
        .iter()
        .find(|l| l.molecule == "H2" && l.qn == q)
        .expect("H2 ground level");
    let b = fit_beta_bound(&h2, e00.energy, e00.origin, q, PotentialKind::Kratzer).unwrap();
    let x = units.length_to_angstrom(b.minimal_length_upper);
    let ratio = x / PUBLISHED_MIN_LENGTH_ANGSTROM;
    let pass = b.sign_consistent && (1.0 / ORDER_OF_MAGNITUDE..=ORDER_OF_MAGNITUDE).contains(&ratio);
    report(
        6,
        "H2 ground level bounds (Delta X)min near 0.01 angstrom",
        pass,
        &format!(
            "gap {:.4} eV, dE/beta {:.3} eV/A^2, beta <= {:.3e} A^2, (Delta X)min <= {x:.3} A = {ratio:.1} x 0.01 A; window factor {ORDER_OF_MAGNITUDE}",
            b.gap, b.coefficient, b.beta_upper
        ),
    );
    assert!(pass, "{}", b.basis);
}

#[test]
fn criterion_7_identities() {
    let mut ok = true;
    let mut checked = 0usize;
    for kind in PotentialKind::ALL {
        for g in [3.0, 20.0, 100.0] {
            let m = Molecule::with_gamma(g).unwrap();
            for n in 0..4 {
                for l in 0..4 {
                    let q = QuantumNumbers::new(n, l);
                    let lvl = kind.energy_deformed(&m, Deformation::NONE, q).unwrap();
                    let e0 = kind.energy_undeformed(&m, q);
                    ok &= lvl.total.to_bits() == e0.to_bits() && lvl.de == 0.0;

                    let b1 = 3.7e-5;
                    let a = kind.energy_deformed(&m, Deformation::new(b1).unwrap(), q).unwrap().de;
                    let b = kind.energy_deformed(&m, Deformation::new(2.0 * b1).unwrap(), q).unwrap().de;
                    let c = kind.energy_deformed(&m, Deformation::new(7.0 * b1).unwrap(), q).unwrap().de;
                    ok &= b.to_bits() == (2.0 * a).to_bits();
                    ok &= ((c / 7.0 - a) / a).abs() <= 4.0 * f64::EPSILON;
                    checked += 1;
                }
            }
            let c0 = kind.spectroscopic_constants(&m, Deformation::NONE);
            let cz = kind.spectroscopic_constants(&m, Deformation::new(0.0).unwrap());
            ok &= c0.as_array().map(f64::to_bits) == cz.as_array().map(f64::to_bits);
        }
    }
    let mut worst = 0.0f64;
    for x in [1e-6, 1e-3, 0.01, 0.18, 2.5] {
        let d = beta_from_minimal_length(x).unwrap();
        let back = minimal_length(d);
        worst = worst.max(((back - x) / x).abs());
        let b = Deformation::new(x).unwrap();
        let beta_back = beta_from_minimal_length(minimal_length(b)).unwrap().beta;
        worst = worst.max(((beta_back - x) / x).abs());
    }
    ok &= worst <= MIN_LENGTH_ROUND_TRIP;
    report(
        7,
        "beta = 0 identity, linearity in beta, minimal-length round trip",
        ok,
        &format!("{checked} levels bitwise; length round trip worst {worst:.1e} <= {MIN_LENGTH_ROUND_TRIP:.0e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_8_coulomb_sanity() {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut orders = Vec::new();
    for (mu, g2) in [(1.0, 1.0), (2.0, 0.5)] {
        for n in 0..3u32 {
            for l in 0..3u32 {
                let p = RadialProblem::auto(Arc::new(move |r| -g2 / r), l, mu, n, 1.0 / (mu * g2), DEFAULT_POINTS)
                    .unwrap();
                let opts = RefineOptions {
                    tolerance: 1e-8,
                    ..RefineOptions::default()
                };
                let r = refine_to_tolerance(&p, &opts).unwrap();
                let want = -mu * g2 * g2 / (2.0 * f64::from(n + l + 1).powi(2));
                let err = ((r.energy - want) / want).abs();
                worst = worst.max(err);
                ok &= err <= COULOMB_TOLERANCE && r.state.nodes() == n as usize && r.state.qn.n == n;
                let order = r.observed_order().unwrap();
                ok &= (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&order);
                orders.push(order);
            }
        }
    }
    let (lo, hi) = orders
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    report(
        8,
        "Coulomb levels, node counts and second-order convergence",
        ok,
        &format!(
            "{} levels, worst rel error {worst:.1e} <= {COULOMB_TOLERANCE:.0e}, order in [{lo:.3}, {hi:.3}] within [{}, {}]",
            orders.len(),
            ORDER_RANGE.0,
            ORDER_RANGE.1
        ),
    );
    assert!(ok);
}
