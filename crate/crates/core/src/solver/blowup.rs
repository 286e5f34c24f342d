//! Gradient-concentration detection and self-similar profile fitting.

use super::integrate::DiagnosticsTrace;
use super::state::FieldState;
use crate::grid::interpolate;

/// Growth of `sup|u_r|` over its initial value that counts as blow-up.
pub const GROWTH_THRESHOLD: f64 = 100.0;

/// Profile misfit is evaluated on `rho ∈ [0, PROFILE_RHO_MAX]`.
pub const PROFILE_RHO_MAX: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupReport {
    pub detected: bool,
    /// Extrapolated singular time from `sup|u_r| ~ C / (T - t)`.
    pub t_star_estimate: Option<f64>,
    pub growth_factor: f64,
    /// RMS misfit of `u(t, rho (T - t))` against `2 arctan(rho)` on `[0, 5]`.
    pub profile_fit_error: Option<f64>,
}

/// Least-squares line through `1 / sup|u_r|` over the final decade of growth;
/// its zero is the blow-up time.
fn fit_blowup_time(trace: &DiagnosticsTrace) -> Option<f64> {
    let peak = trace.rows.iter().map(|r| r.sup_abs_u_r).fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = trace
        .rows
        .iter()
        .filter(|r| r.sup_abs_u_r >= peak / 10.0 && r.sup_abs_u_r > 0.0)
        .map(|r| (r.t, 1.0 / r.sup_abs_u_r))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let (mt, my) = pts.iter().fold((0.0, 0.0), |(a, b), (t, y)| (a + t / n, b + y / n));
    let (sty, stt) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, y)| (a + (t - mt) * (y - my), b + (t - mt) * (t - mt)));
    if stt == 0.0 {
        return None;
    }
    let slope = sty / stt;
    if slope >= 0.0 {
        return None;
    }
    Some(mt - my / slope)
}

/// RMS distance between the rescaled field and the Turok-Spergel profile.
pub fn self_similar_misfit(state: &FieldState, t_star: f64) -> Option<f64> {
    let scale = t_star - state.t;
    if !(scale > 0.0) {
        return None;
    }
    let m = 501;
    let mut acc = 0.0;
    for i in 0..m {
        let rho = PROFILE_RHO_MAX * i as f64 / (m - 1) as f64;
        let r = rho * scale;
        let v = interpolate(&state.v, &state.grid, r)?;
        let d = r * v - 2.0 * rho.atan();
        // trapezoid weights
        let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
        acc += w * d * d;
    }
    Some((acc / (m - 1) as f64).sqrt())
}

pub fn detect_blowup(trace: &DiagnosticsTrace, state: &FieldState) -> BlowupReport {
    let growth = trace.growth_factor().max(1.0);
    let detected = growth >= GROWTH_THRESHOLD || (trace.blowup && !state.is_finite());
    let t_star = if detected { fit_blowup_time(trace) } else { None };
    let fit = t_star.and_then(|ts| self_similar_misfit(state, ts));
    BlowupReport { detected, t_star_estimate: t_star, growth_factor: growth, profile_fit_error: fit }
}
