// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::grid::{auto_grid, RadialGrid};
use super::{p4_expectation, solve_radial, RadialEigenstate};
use crate::error::{Error, Result};

/// Tightest relative tolerance accepted by [`refine_to_tolerance`].
pub const MIN_TOLERANCE: f64 = 1e-8;

/// Starting point count for automatically sized boxes.
pub const DEFAULT_POINTS: usize = 2001;

pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// One radial level to be solved: potential, ℓ, μ, the target n and the
/// coarsest grid.
#[derive(Clone)]
pub struct RadialProblem {
    pub potential: RadialFn,
    pub l: u32,
    pub mu: f64,
    pub n: u32,
    pub grid: RadialGrid,
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("l", &self.l)
            .field("mu", &self.mu)
            .field("n", &self.n)
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    pub fn new(potential: RadialFn, l: u32, mu: f64, n: u32, grid: RadialGrid) -> Self {
        RadialProblem {
            potential,
            l,
            mu,
            n,
            grid,
        }
    }

    /// Box chosen by [`auto_grid`] with `point_count` points on the coarsest level.
    pub fn auto(potential: RadialFn, l: u32, mu: f64, n: u32, length_scale: f64, point_count: usize) -> Result<Self> {
        let grid = auto_grid(&*potential, l, mu, n, length_scale, point_count)?;
        Ok(RadialProblem::new(potential, l, mu, n, grid))
    }

    pub fn solve(&self, grid: &RadialGrid) -> Result<RadialEigenstate> {
        let states = solve_radial(|r| (self.potential)(r), self.l, self.mu, grid, self.n as usize + 1)?;
        Ok(states.into_iter().nth(self.n as usize).expect("solve_radial returns `count` states"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefineOptions {
    /// Relative tolerance on the extrapolated eigenvalue.
    pub tolerance: f64,
    /// Relative tolerance on the extrapolated ⟨p⁴⟩; `None` skips it.
    pub p4_tolerance: Option<f64>,
    /// Number of grids tried, including the first.
    pub max_levels: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            tolerance: 1e-7,
            p4_tolerance: None,
            max_levels: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefineLevel {
    pub point_count: usize,
    pub energy: f64,
    pub p4: Option<f64>,
    /// (4E_k − E_{k−1})/3 from this and the previous level.
    pub extrapolated: Option<f64>,
    /// ⟨p⁴⟩ extrapolated with the observed convergence order.
    pub p4_extrapolated: Option<f64>,
    pub estimate: Option<f64>,
    pub p4_estimate: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Refined {
    pub energy: f64,
    /// Relative error estimate of `energy`.
    pub error_estimate: f64,
    pub p4: Option<f64>,
    pub p4_error_estimate: Option<f64>,
    pub levels: Vec<RefineLevel>,
    /// Eigenstate on the finest grid.
    pub state: RadialEigenstate,
}

impl Refined {
    /// log₂ of successive raw-energy difference ratios over the first three
    /// levels; 2 for a clean second-order scheme.
    pub fn observed_order(&self) -> Option<f64> {
        let e: Vec<f64> = self.levels.iter().map(|l| l.energy).collect();
        if e.len() < 3 {
            return None;
        }
        Some(((e[0] - e[1]) / (e[1] - e[2])).abs().log2())
    }
}

pub fn history(levels: &[RefineLevel]) -> String {
    levels
        .iter()
        .map(|l| {
            let est = l.estimate.map_or_else(|| "-".to_owned(), |e| format!("{e:.2e}"));
            format!("[points={} E={:.12e} est={est}]", l.point_count, l.energy)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn richardson(fine: f64, coarse: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Richardson step using the order observed over the last three levels,
/// clamped to [0.5, 4]; second order when fewer levels exist or the
/// differences change sign. ⟨p⁴⟩ converges only linearly when the wave
/// function reaches a strong 1/r² wall at the origin.
fn extrapolate_observed(values: &[f64], k: usize) -> f64 {
    if k >= 2 {
        let d1 = values[k - 1] - values[k - 2];
        let d2 = values[k] - values[k - 1];
        if d1 != 0.0 && d2 != 0.0 && d1.signum() == d2.signum() {
            let p = (d1 / d2).log2().clamp(0.5, 4.0);
            return values[k] + d2 / (2f64.powf(p) - 1.0);
        }
    }
    richardson(values[k], values[k - 1])
}

fn relative(diff: f64, value: f64) -> f64 {
    if value == 0.0 {
        diff.abs()
    } else {
        (diff / value).abs()
    }
}

/// Error estimate for level k: the Richardson correction itself on the first
/// pair, then the change of the extrapolated value between pairs.
fn estimate(value: &[f64], extrapolated: &[Option<f64>], k: usize) -> f64 {
    let ext = extrapolated[k].expect("k >= 1");
    match extrapolated[k - 1] {
        Some(prev) => relative(ext - prev, ext),
        None => relative((value[k] - value[k - 1]) / 3.0, ext),
    }
}

/// Solves on successively doubled grids and Richardson-extrapolates until the
/// relative error estimate is within tolerance.
pub fn refine_to_tolerance(problem: &RadialProblem, options: &RefineOptions) -> Result<Refined> {
    if !(options.tolerance >= MIN_TOLERANCE) {
        return Err(Error::invalid("tolerance", options.tolerance, "must be >= 1e-8"));
    }
    if let Some(t) = options.p4_tolerance {
        if !(t >= MIN_TOLERANCE) {
            return Err(Error::invalid("p4_tolerance", t, "must be >= 1e-8"));
        }
    }
    if options.max_levels < 2 {
        return Err(Error::invalid("max_levels", options.max_levels as f64, "must be >= 2"));
    }

    let mut levels: Vec<RefineLevel> = Vec::new();
    let mut energies = Vec::new();
    let mut p4s = Vec::new();
    let mut ext_e: Vec<Option<f64>> = Vec::new();
    let mut ext_p: Vec<Option<f64>> = Vec::new();
    let mut grid = problem.grid;
    let mut e_done = false;
    let mut p_done = options.p4_tolerance.is_none();

    for k in 0..options.max_levels {
        let state = problem
            .solve(&grid)
            .map_err(|e| non_convergence(format!("level {k}: {e}"), &levels))?;
        energies.push(state.energy);
        let p4 = options
            .p4_tolerance
            .map(|_| p4_expectation(&state, |r| (problem.potential)(r), problem.mu));
        p4s.push(p4.unwrap_or(0.0));

        let mut level = RefineLevel {
            point_count: grid.point_count(),
            energy: state.energy,
            p4,
            extrapolated: None,
            p4_extrapolated: None,
            estimate: None,
            p4_estimate: None,
        };
        if k == 0 {
            ext_e.push(None);
            ext_p.push(None);
        } else {
            ext_e.push(Some(richardson(energies[k], energies[k - 1])));
            let est = estimate(&energies, &ext_e, k);
            level.extrapolated = ext_e[k];
            level.estimate = Some(est);
            if options.p4_tolerance.is_some() {
                ext_p.push(Some(extrapolate_observed(&p4s, k)));
                level.p4_extrapolated = ext_p[k];
                level.p4_estimate = Some(estimate(&p4s, &ext_p, k));
            } else {
                ext_p.push(None);
            }

            let prev = levels.last().expect("k >= 1");
            if !e_done {
                if let Some(prev_est) = prev.estimate {
                    if est > prev_est {
                        levels.push(level);
                        return Err(non_convergence(
                            format!("energy error estimate grew from {prev_est:.2e} to {est:.2e}"),
                            &levels,
                        ));
                    }
                }
            }
            // the p4 estimate before level 3 rests on an assumed order
            if !p_done && k >= 3 {
                if let (Some(prev_est), Some(est)) = (prev.p4_estimate, level.p4_estimate) {
                    if est > prev_est {
                        levels.push(level);
                        return Err(non_convergence(
                            format!("p4 error estimate grew from {prev_est:.2e} to {est:.2e}"),
                            &levels,
                        ));
                    }
                }
            }
            e_done = e_done || est <= options.tolerance;
            p_done = p_done || level.p4_estimate.zip(options.p4_tolerance).is_some_and(|(e, t)| e <= t);
        }
        levels.push(level);

        if e_done && p_done {
            let last = levels.last().expect("non-empty");
            return Ok(Refined {
                energy: last.extrapolated.expect("k >= 1"),
                error_estimate: last.estimate.expect("k >= 1"),
                p4: last.p4_extrapolated,
                p4_error_estimate: last.p4_estimate,
                levels,
                state,
            });
        }
        grid = grid.refined();
    }
    Err(non_convergence(
        format!(
            "tolerance {:.1e} not reached in {} levels",
            options.tolerance, options.max_levels
        ),
        &levels,
    ))
}

fn non_convergence(reason: String, levels: &[RefineLevel]) -> Error {
    Error::NonConvergence {
        reason,
        history: history(levels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb(l: u32, n: u32) -> RadialProblem {
        RadialProblem::auto(Arc::new(|r| -1.0 / r), l, 1.0, n, 1.0, DEFAULT_POINTS).unwrap()
    }

    #[test]
    fn coulomb_ground_state_within_four_levels() {
        let opts = RefineOptions {
            tolerance: 1e-6,
            ..RefineOptions::default()
        };
        let r = refine_to_tolerance(&coulomb(0, 0), &opts).unwrap();
        assert!(r.levels.len() <= 4, "{}", history(&r.levels));
        assert!((r.energy + 0.5).abs() <= 1e-6 * 0.5, "{}", r.energy);
    }

    #[test]
    fn second_order_convergence() {
        let opts = RefineOptions {
            tolerance: 1e-8,
            max_levels: 3,
            ..RefineOptions::default()
        };
        // three levels are enough to read off the order even without convergence
        let p = coulomb(1, 0);
        let mut e = Vec::new();
        let mut g = p.grid;
        for _ in 0..opts.max_levels {
            e.push(p.solve(&g).unwrap().energy);
            g = g.refined();
        }
        let order = ((e[0] - e[1]) / (e[1] - e[2])).abs().log2();
        assert!((1.8..=2.2).contains(&order), "{order}");
    }

    #[test]
    fn converged_input_returns_after_one_confirmation() {
        let p = coulomb(1, 0);
        let fine = RadialProblem {
            grid: p.grid.with_points(64001).unwrap(),
            ..p
        };
        let opts = RefineOptions {
            tolerance: 1e-4,
            ..RefineOptions::default()
        };
        let r = refine_to_tolerance(&fine, &opts).unwrap();
        assert_eq!(r.levels.len(), 2);
    }

    #[test]
    fn tolerance_below_floor_is_rejected() {
        let opts = RefineOptions {
            tolerance: 1e-10,
            ..RefineOptions::default()
        };
        assert!(matches!(
            refine_to_tolerance(&coulomb(0, 0), &opts),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn unreachable_tolerance_fails_with_history() {
        let opts = RefineOptions {
            tolerance: 1e-8,
            max_levels: 2,
            ..RefineOptions::default()
        };
        match refine_to_tolerance(&coulomb(0, 0), &opts) {
            Err(Error::NonConvergence { history, .. }) => assert!(history.contains("points=2001")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn p4_refinement() {
        // hydrogen 2p: ⟨p⁴⟩ = 7/48
        let opts = RefineOptions {
            tolerance: 1e-7,
            p4_tolerance: Some(1e-6),
            ..RefineOptions::default()
        };
        let r = refine_to_tolerance(&coulomb(1, 0), &opts).unwrap();
        let p4 = r.p4.unwrap();
        assert!((p4 - 7.0 / 48.0).abs() < 1e-7, "{p4}");
    }
}
