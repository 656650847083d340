// SPDX-License-Identifier: Apache-2.0

//! Independent numerical check of the closed forms.
//!
//! The reduced radial equation
//!
//! ```text
//! −(ħ²/2μ) u″ + [V(r) + ħ²ℓ(ℓ+1)/(2μr²)] u = E u,   u(r_min) = u(r_max) = 0
//! ```
//!
//! is discretized with three-point central differences on a uniform grid,
//! giving a symmetric tridiagonal matrix whose lowest eigenpairs are found by
//! bisection and inverse iteration. The first-order minimal-length shift of
//! the (β/μ)p⁴ term follows from p²ψ = 2μ(E − V)ψ:
//!
//! ```text
//! ΔE = (β/μ)⟨p⁴⟩ = 4μβ ∫ u² (E − V)² dr
//! ```

mod grid;
mod refine;
pub mod tridiag;

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::model::{Deformation, QuantumNumbers};
use crate::units::HBAR;

pub use grid::{auto_grid, RadialGrid, WKB_MARGIN};
pub use refine::{
    history, refine_to_tolerance, RadialFn, RadialProblem, RefineLevel, RefineOptions, Refined, DEFAULT_POINTS,
    MIN_TOLERANCE,
};

use grid::centrifugal;

/// Largest |u| at the box edges, relative to max |u|, accepted as "decayed".
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

/// Amplitudes below this fraction of max |u| are ignored when counting nodes.
const NODE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialEigenstate {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub grid: RadialGrid,
    /// u at every grid point, including the two Dirichlet boundary zeros.
    pub u: Vec<f64>,
    /// ∫u² dr after normalization (trapezoid rule).
    pub norm_check: f64,
    /// max(|u| at the first/last interior point) / max |u|.
    pub boundary_amplitude: f64,
}

impl RadialEigenstate {
    pub fn nodes(&self) -> usize {
        count_nodes(&self.u)
    }

    /// Trapezoid quadrature of f(r)·u(r)² over the grid.
    pub fn expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        let h = self.grid.spacing();
        let last = self.u.len() - 1;
        // boundary values of u are zero, so only interior points contribute
        (1..last)
            .map(|i| {
                let u = self.u[i];
                f(self.grid.r(i)) * u * u
            })
            .sum::<f64>()
            * h
    }

    /// Two-column (r, u) text: a `#` metadata line then fixed-precision rows.
    pub fn write_dump<W: Write>(&self, mut w: W, label: &str) -> io::Result<()> {
        writeln!(
            w,
            "# {label} n={} l={} energy={:.15e} points={} r_min={:.15e} r_max={:.15e}",
            self.qn.n,
            self.qn.l,
            self.energy,
            self.grid.point_count(),
            self.grid.r_min,
            self.grid.r_max
        )?;
        for (i, u) in self.u.iter().enumerate() {
            writeln!(w, "{:.10e} {:.10e}", self.grid.r(i), u)?;
        }
        Ok(())
    }
}

/// Lowest `count` bound states of the radial equation on `grid`, labelled by
/// node count.
pub fn solve_radial<V: Fn(f64) -> f64>(
    potential: V,
    l: u32,
    mu: f64,
    grid: &RadialGrid,
    count: usize,
) -> Result<Vec<RadialEigenstate>> {
    if count == 0 {
        return Err(Error::Oracle("count must be >= 1".into()));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::invalid("mu", mu, "must be finite and > 0"));
    }
    let interior = grid.intervals - 1;
    if count > interior {
        return Err(Error::Oracle(format!(
            "{count} states requested but the grid has only {interior} interior points"
        )));
    }
    let h = grid.spacing();
    let (t, veff) = grid::hamiltonian(&potential, l, mu, grid)?;

    let energies = t.smallest_eigenvalues(count);
    let edge_cap = if grid.r_min > 0.0 {
        veff[0].min(veff[interior - 1])
    } else {
        veff[interior - 1]
    };

    let mut states = Vec::with_capacity(count);
    for (k, &energy) in energies.iter().enumerate() {
        if energy >= edge_cap {
            return Err(Error::Oracle(format!(
                "only {k} bound states below the box-edge potential {edge_cap:.6e} (state {k} at {energy:.6e}); enlarge the grid"
            )));
        }
        let mut u = Vec::with_capacity(grid.intervals + 1);
        u.push(0.0);
        u.extend(t.eigenvector(energy));
        u.push(0.0);

        let norm2: f64 = u.iter().map(|x| x * x).sum::<f64>() * h;
        let scale = norm2.sqrt();
        // fix the sign so the innermost lobe is positive
        let umax = u.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let first = u.iter().find(|x| x.abs() > NODE_FLOOR * umax).copied().unwrap_or(1.0);
        let sign = if first < 0.0 { -1.0 } else { 1.0 };
        u.iter_mut().for_each(|x| *x *= sign / scale);
        let umax = umax / scale;

        let inner = if grid.r_min > 0.0 { u[1].abs() } else { 0.0 };
        let boundary_amplitude = inner.max(u[grid.intervals - 1].abs()) / umax;
        if boundary_amplitude > BOUNDARY_TOLERANCE {
            return Err(Error::Oracle(format!(
                "state {k} (E = {energy:.6e}) has boundary amplitude {boundary_amplitude:.2e} > {BOUNDARY_TOLERANCE:.0e}; the box [{}, {}] is too small",
                grid.r_min, grid.r_max
            )));
        }
        let norm_check = u.iter().map(|x| x * x).sum::<f64>() * h;
        let nodes = count_nodes(&u);
        states.push(RadialEigenstate {
            qn: QuantumNumbers::new(nodes as u32, l),
            energy,
            grid: *grid,
            u,
            norm_check,
            boundary_amplitude,
        });
    }

    states.sort_by_key(|s| s.qn.n);
    for (k, s) in states.iter().enumerate() {
        if s.qn.n as usize != k {
            let labels: Vec<u32> = states.iter().map(|s| s.qn.n).collect();
            return Err(Error::Oracle(format!(
                "node counts {labels:?} do not label states 0..{count}; the grid is too coarse"
            )));
        }
    }
    Ok(states)
}

/// ⟨p⁴⟩ = 4μ² ∫ u² (E − V)² dr, with V the bare potential (no centrifugal term).
pub fn p4_expectation<V: Fn(f64) -> f64>(state: &RadialEigenstate, potential: V, mu: f64) -> f64 {
    let e = state.energy;
    4.0 * mu * mu * state.expectation(|r| {
        let k = e - potential(r);
        k * k
    })
}

/// ⟨p⁴⟩ from the discrete operator itself: ∫ [(−u″ + ℓ(ℓ+1)u/r²)/ħ²]² dr with
/// the same second difference as the eigensolver. On a discrete eigenvector
/// this coincides with [`p4_expectation`] up to rounding.
pub fn p4_expectation_fd(state: &RadialEigenstate) -> f64 {
    let h = state.grid.spacing();
    let l = f64::from(state.qn.l);
    let lf = l * (l + 1.0);
    let u = &state.u;
    let mut sum = 0.0;
    for i in 1..u.len() - 1 {
        let r = state.grid.r(i);
        let w = -(u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) + lf * u[i] / (r * r);
        sum += w * w;
    }
    HBAR.powi(4) * sum * h
}

/// First-order energy shift (β/μ)⟨p⁴⟩.
pub fn perturbative_correction<V: Fn(f64) -> f64>(
    state: &RadialEigenstate,
    potential: V,
    mu: f64,
    d: Deformation,
) -> f64 {
    d.beta / mu * p4_expectation(state, potential, mu)
}

/// ⟨p²⟩/2μ including the centrifugal part, from the discrete gradient.
pub fn kinetic_expectation(state: &RadialEigenstate, mu: f64) -> f64 {
    let h = state.grid.spacing();
    let grad: f64 = state.u.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / h;
    HBAR * HBAR * grad / (2.0 * mu) + state.expectation(|r| centrifugal(state.qn.l, mu) / (r * r))
}

pub fn count_nodes(u: &[f64]) -> usize {
    let umax = u.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let floor = NODE_FLOOR * umax;
    let mut nodes = 0;
    let mut prev = 0.0f64;
    for &x in u {
        if x.abs() <= floor {
            continue;
        }
        if prev != 0.0 && prev.signum() != x.signum() {
            nodes += 1;
        }
        prev = x;
    }
    nodes
}
