// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use mlspec::oracle::{RadialFn, RadialProblem, DEFAULT_POINTS};
use mlspec::{Molecule, PotentialKind};

/// Synthetic molecules at the γ values used by the verification sweep.
pub fn sweep_molecules() -> Vec<Molecule> {
    [20.0, 100.0]
        .into_iter()
        .map(|g| Molecule::with_gamma(g).expect("positive gamma"))
        .collect()
}

/// A radial problem for level (n, ℓ) of `kind` with an automatic box.
pub fn radial_problem(kind: PotentialKind, m: &Molecule, n: u32, l: u32) -> RadialProblem {
    let pot = kind.potential(m);
    let f: RadialFn = Arc::new(move |r| pot.at(r));
    RadialProblem::auto(f, l, m.reduced_mass, n, m.equilibrium_distance, DEFAULT_POINTS).expect("bound level")
}
