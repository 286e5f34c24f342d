use super::integrate::{evolve, IntegrateOptions};
use super::state::FieldState;
use crate::error::{config, Result};
use crate::model::ModelSpec;

/// Above this `sup|u|` the data are not treated as small.
pub const SMALL_DATA_GUARD: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringDeficit {
    pub t1: f64,
    pub t2: f64,
    pub deficit: f64,
}

/// Evolves nonlinearly to `t1`, then evolves both the nonlinear equation and
/// the free 5D wave equation from that state to `t2` and measures how far
/// apart they end up.
pub fn scattering_deficit(init: &FieldState, model: ModelSpec, dt: f64, t1: f64, t2: f64) -> Result<ScatteringDeficit> {
    if !(t2 > t1 && t1 >= init.t) {
        return Err(config(format!("need t2 > t1 >= t0, got t1 = {t1}, t2 = {t2}")));
    }
    let start = init.with_model(model);
    let size = start.sup_abs_u();
    if size > SMALL_DATA_GUARD {
        log::warn!("scattering_deficit: sup|u| = {size} is not small");
    }
    let (_, handoff) = evolve(&start, dt, t1 - init.t, &IntegrateOptions::default())?;
    let opts = IntegrateOptions {
        cadence: usize::MAX,
        companion: Some(ModelSpec::free_wave()),
        ..IntegrateOptions::default()
    };
    let (trace, _) = evolve(&handoff, dt, t2 - t1, &opts)?;
    if trace.blowup {
        return Err(crate::Error::BlowUp {
            t: trace.last().map_or(t1, |r| r.t),
            reason: trace.stop_reason.unwrap_or_default(),
        });
    }
    let deficit = trace.last().and_then(|r| r.deficit).unwrap_or(0.0);
    Ok(ScatteringDeficit { t1, t2, deficit })
}
