// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::units::HBAR;

use super::tridiag::SymTridiagonal;

/// WKB decay exponent ∫κ dr required between a classical turning point and
/// the box edge. e^(−25) ≈ 1.4e−11 in amplitude.
pub const WKB_MARGIN: f64 = 25.0;

/// Inner box edges closer to the origin than this fraction of the inner
/// turning point are moved to the origin.
const INNER_SNAP: f64 = 0.05;
const PROBE_INTERVALS: usize = 6000;
const SCAN_POINTS: usize = 4000;

/// Uniform grid r_i = r_min + i·h, i = 0..=intervals. The end points carry the
/// Dirichlet zeros. `r_min = 0` is allowed for potentials that are finite on
/// the interior points (the Coulomb case needs the origin as its wall).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub intervals: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, point_count: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_min >= 0.0) {
            return Err(Error::invalid("r_min", r_min, "must be finite and >= 0"));
        }
        if !(r_max.is_finite() && r_max > r_min) {
            return Err(Error::invalid("r_max", r_max, "must be finite and > r_min"));
        }
        if point_count < 4 {
            return Err(Error::invalid("point_count", point_count as f64, "must be >= 4"));
        }
        Ok(RadialGrid {
            r_min,
            r_max,
            intervals: point_count - 1,
        })
    }

    pub fn point_count(&self) -> usize {
        self.intervals + 1
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / self.intervals as f64
    }

    pub fn r(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.spacing()
    }

    /// Same box with the spacing halved.
    pub fn refined(&self) -> Self {
        RadialGrid {
            intervals: 2 * self.intervals,
            ..*self
        }
    }

    pub fn with_points(&self, point_count: usize) -> Result<Self> {
        RadialGrid::new(self.r_min, self.r_max, point_count)
    }
}

pub(crate) fn centrifugal(l: u32, mu: f64) -> f64 {
    let l = f64::from(l);
    HBAR * HBAR * l * (l + 1.0) / (2.0 * mu)
}

/// Finite-difference Hamiltonian on the interior points, plus V_eff there.
pub(crate) fn hamiltonian(
    potential: &dyn Fn(f64) -> f64,
    l: u32,
    mu: f64,
    grid: &RadialGrid,
) -> Result<(SymTridiagonal, Vec<f64>)> {
    let interior = grid.intervals - 1;
    let h = grid.spacing();
    let kinetic = HBAR * HBAR / (2.0 * mu * h * h);
    let cf = centrifugal(l, mu);
    let mut veff = Vec::with_capacity(interior);
    for i in 1..grid.intervals {
        let r = grid.r(i);
        let v = potential(r) + cf / (r * r);
        if !v.is_finite() {
            return Err(Error::Oracle(format!("potential is not finite at r = {r}")));
        }
        veff.push(v);
    }
    let diag = veff.iter().map(|v| v + 2.0 * kinetic).collect();
    Ok((SymTridiagonal::new(diag, vec![-kinetic; interior - 1]), veff))
}

/// A box for state `n` whose edges lie [`WKB_MARGIN`] decay lengths beyond
/// the classical turning points, with `point_count` points.
///
/// `length_scale` sets where the search starts (rₑ for a molecule, the Bohr
/// radius for Coulomb). If the effective potential has no inner wall the box
/// starts at the origin.
pub fn auto_grid(
    potential: &dyn Fn(f64) -> f64,
    l: u32,
    mu: f64,
    n: u32,
    length_scale: f64,
    point_count: usize,
) -> Result<RadialGrid> {
    if !(length_scale.is_finite() && length_scale > 0.0) {
        return Err(Error::invalid("length_scale", length_scale, "must be finite and > 0"));
    }
    let cf = centrifugal(l, mu);
    let veff = |r: f64| potential(r) + cf / (r * r);

    // locate the well minimum on a logarithmic scan
    let (lo_exp, hi_exp) = (-4.0f64, 3.0f64);
    let scan = |k: usize| length_scale * 10f64.powf(lo_exp + (hi_exp - lo_exp) * k as f64 / SCAN_POINTS as f64);
    let mut k_min = 0;
    let mut v_min = f64::INFINITY;
    for k in 0..=SCAN_POINTS {
        let v = veff(scan(k));
        if v < v_min {
            v_min = v;
            k_min = k;
        }
    }
    if k_min == SCAN_POINTS || !v_min.is_finite() {
        return Err(Error::Oracle("effective potential has no minimum; no bound states".into()));
    }
    let r_well = scan(k_min);
    let inner_open = k_min == 0;

    let mut grid = RadialGrid::new(0.0, 20.0 * length_scale.max(r_well), PROBE_INTERVALS + 1)?;
    let mut last = None;
    for _ in 0..4 {
        let (t, _) = hamiltonian(potential, l, mu, &grid)?;
        let ev = t.smallest_eigenvalues(n as usize + 1);
        let e = ev[n as usize];
        if e <= v_min {
            return Err(Error::Oracle(format!("level estimate {e:.6e} lies below the well minimum")));
        }

        let step0 = 1e-3 * r_well;
        let r_out = turning_point(&veff, e, r_well, step0)?;
        let r_max = decay_edge(&veff, mu, e, r_out, step0);
        let r_min = if inner_open {
            0.0
        } else {
            let r_in = turning_point(&veff, e, r_well, -step0)?;
            let edge = decay_edge(&veff, mu, e, r_in, -step0.min(0.5 * r_in / 64.0));
            // a wall that close to the origin is the centrifugal barrier; use the origin
            if edge < INNER_SNAP * r_in {
                0.0
            } else {
                edge
            }
        };
        let next = RadialGrid::new(r_min, r_max, point_count)?;
        if let Some(prev) = last {
            let prev: RadialGrid = prev;
            let close = (prev.r_max - next.r_max).abs() <= 0.01 * next.r_max
                && (prev.r_min - next.r_min).abs() <= 0.01 * next.r_max;
            if close {
                return Ok(next);
            }
        }
        last = Some(next);
        // probe again on the tighter box for a better level estimate
        grid = RadialGrid::new(r_min, r_max, PROBE_INTERVALS + 1)?;
    }
    last.ok_or_else(|| Error::Oracle("automatic box did not settle".into()))
}

/// First r (walking from `start` with `step`, which may be negative) where
/// V_eff rises above `e`, refined by bisection.
fn turning_point(veff: &dyn Fn(f64) -> f64, e: f64, start: f64, step: f64) -> Result<f64> {
    let mut a = start;
    let mut s = step;
    for _ in 0..200_000 {
        let b = a + s;
        if b <= 0.0 {
            return Err(Error::Oracle("no inner turning point".into()));
        }
        if veff(b) > e {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if veff(mid) > e {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(hi);
        }
        a = b;
        // geometric growth keeps the walk short for long tails
        s *= 1.01;
    }
    Err(Error::Oracle(format!("no turning point found for E = {e:.6e}")))
}

/// Walks from the turning point until ∫κ dr reaches the margin.
fn decay_edge(veff: &dyn Fn(f64) -> f64, mu: f64, e: f64, turning: f64, step: f64) -> f64 {
    let mut r = turning;
    let mut s = step;
    let mut action = 0.0;
    while action < WKB_MARGIN {
        let mid = r + 0.5 * s;
        if mid <= 0.0 {
            return 0.0;
        }
        let k = (2.0 * mu * (veff(mid) - e)).max(0.0).sqrt() / HBAR;
        action += k * s.abs();
        r += s;
        // keep each step's contribution small once the decay is fast
        if k * s.abs() < 0.05 {
            s *= 1.05;
        } else if k * s.abs() > 0.2 {
            s *= 0.5;
        }
        if r <= 0.0 {
            return 0.0;
        }
    }
    r
}
