use super::integrate::{evolve, IntegrateOptions};
use super::state::FieldState;
use super::stepper::CFL;
use crate::error::{config, Result};
use crate::grid::RadialGrid;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub resolutions: Vec<usize>,
    /// Max-norm errors against the oracle, or successive differences in a
    /// self-convergence study.
    pub errors: Vec<f64>,
    /// `log2` of consecutive error ratios.
    pub orders: Vec<f64>,
    /// False when some error failed to decrease under refinement.
    pub monotone: bool,
}

impl ConvergenceReport {
    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn check_resolutions(res: &[usize]) -> Result<()> {
    if res.len() < 3 {
        return Err(config("convergence study needs at least three resolutions"));
    }
    for w in res.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(config(format!("resolutions must double: {} -> {}", w[0], w[1])));
        }
    }
    Ok(())
}

fn run(init: &dyn Fn(&RadialGrid) -> FieldState, r_max: f64, n: usize, t_span: f64) -> Result<FieldState> {
    let g = RadialGrid::new(r_max, n)?;
    let s0 = init(&g);
    let (trace, s) = evolve(&s0, CFL * g.dr(), t_span, &IntegrateOptions { cadence: usize::MAX, ..Default::default() })?;
    if trace.blowup {
        return Err(crate::Error::BlowUp { t: s.t, reason: trace.stop_reason.unwrap_or_default() });
    }
    Ok(s)
}

fn summarize(resolutions: &[usize], errors: Vec<f64>) -> ConvergenceReport {
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    if !monotone {
        log::warn!("convergence study: errors not monotone: {errors:?}");
    }
    ConvergenceReport { resolutions: resolutions.to_vec(), errors, orders, monotone }
}

/// Observed order against an exact solution `exact(t, r)` at `t0 + t_span`.
pub fn convergence_study_exact(
    init: &dyn Fn(&RadialGrid) -> FieldState,
    exact: &dyn Fn(f64, f64) -> f64,
    r_max: f64,
    t_span: f64,
    resolutions: &[usize],
) -> Result<ConvergenceReport> {
    check_resolutions(resolutions)?;
    let mut errors = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let s = run(init, r_max, n, t_span)?;
        let err = (0..s.grid.len())
            .map(|j| (s.v.values[j] - exact(s.t, s.grid.r(j))).abs())
            .fold(0.0, f64::max);
        errors.push(err);
    }
    Ok(summarize(resolutions, errors))
}

/// Self-convergence: differences between successive resolutions on the
/// coarser nodes.
pub fn convergence_study(
    init: &dyn Fn(&RadialGrid) -> FieldState,
    r_max: f64,
    t_span: f64,
    resolutions: &[usize],
) -> Result<ConvergenceReport> {
    check_resolutions(resolutions)?;
    let states: Vec<FieldState> = resolutions.iter().map(|&n| run(init, r_max, n, t_span)).collect::<Result<_>>()?;
    let diffs = states
        .windows(2)
        .map(|w| {
            (0..w[0].grid.len())
                .map(|j| (w[0].v.values[j] - w[1].v.values[2 * j]).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(summarize(&resolutions[..resolutions.len() - 1], diffs))
}
