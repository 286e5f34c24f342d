use super::state::FieldState;
use crate::error::{config, Error, Result};
use crate::grid::{self, FieldSamples, OuterBoundary, Parity};
use crate::model::{rhs_v, PointData};

/// Courant number of the explicit RK4 scheme.
pub const CFL: f64 = 0.5;

/// Hard stop on `sup |v|`.
pub const HARD_STOP: f64 = 1e6;

/// Scratch buffers for repeated right-hand-side evaluations.
#[derive(Debug, Clone)]
pub(crate) struct Workspace {
    v_r: Vec<f64>,
    lap: Vec<f64>,
    vt_r: Vec<f64>,
    stage_v: Vec<f64>,
    stage_vt: Vec<f64>,
    kv: [Vec<f64>; 4],
    ka: [Vec<f64>; 4],
}

impl Workspace {
    pub(crate) fn new(len: usize) -> Self {
        let z = || vec![0.0; len];
        Self {
            v_r: z(),
            lap: z(),
            vt_r: z(),
            stage_v: z(),
            stage_vt: z(),
            kv: [z(), z(), z(), z()],
            ka: [z(), z(), z(), z()],
        }
    }
}

/// `v_tt` on every node for the given `(v, v_t)`.
fn accel_into(s: &FieldState, v: &[f64], vt: &[f64], ws_v_r: &mut [f64], ws_lap: &mut [f64], ws_vt_r: &mut [f64], out: &mut [f64]) {
    let g = &s.grid;
    let dr = g.dr();
    let n = g.cells();
    grid::d_r_into(v, Parity::Even, dr, ws_v_r);
    grid::laplacian5_into(v, dr, ws_lap);
    let model = &s.model;
    if model.is_linear() {
        out.copy_from_slice(ws_lap);
    } else {
        for j in 0..=n {
            let p = PointData { r: g.r(j), v: v[j], v_r: ws_v_r[j], v_t: vt[j] };
            out[j] = ws_lap[j] + rhs_v(model, &p);
        }
    }
    match g.outer {
        OuterBoundary::Isolated => {
            out[n - 1] = 0.0;
            out[n] = 0.0;
        }
        OuterBoundary::Sommerfeld => {
            // ∂_t (v_t + v_r + 2 v / R) = 0 at the last node
            grid::d_r_into(vt, Parity::Even, dr, ws_vt_r);
            out[n] = -ws_vt_r[n] - 2.0 * vt[n] / g.r_max();
        }
    }
}

/// `v_tt = Δ₅ v + N(v)` on the grid of `s`.
pub fn acceleration(s: &FieldState) -> Result<FieldSamples> {
    let len = s.grid.len();
    let mut ws = Workspace::new(len);
    let mut out = vec![0.0; len];
    accel_into(s, &s.v.values, &s.vt.values, &mut ws.v_r, &mut ws.lap, &mut ws.vt_r, &mut out);
    if out.iter().any(|a| !a.is_finite()) {
        return Err(Error::BlowUp { t: s.t, reason: "non-finite acceleration".into() });
    }
    Ok(FieldSamples::new(out, Parity::Even))
}

pub(crate) fn check_cfl(s: &FieldState, dt: f64) -> Result<()> {
    let limit = CFL * s.grid.dr();
    if !dt.is_finite() || dt.abs() > limit * (1.0 + 1e-12) {
        return Err(config(format!("time step {dt} violates CFL limit {limit} (cfl = {CFL})")));
    }
    Ok(())
}

/// One classical RK4 step in place.
pub(crate) fn step_in_place(s: &mut FieldState, dt: f64, ws: &mut Workspace) -> Result<()> {
    let len = s.grid.len();
    let Workspace { v_r, lap, vt_r, stage_v, stage_vt, kv, ka } = ws;
    let weights = [0.5, 0.5, 1.0];
    for stage in 0..4 {
        if stage == 0 {
            stage_v.copy_from_slice(&s.v.values);
            stage_vt.copy_from_slice(&s.vt.values);
        } else {
            let c = weights[stage - 1] * dt;
            for j in 0..len {
                stage_v[j] = s.v.values[j] + c * kv[stage - 1][j];
                stage_vt[j] = s.vt.values[j] + c * ka[stage - 1][j];
            }
        }
        kv[stage].copy_from_slice(stage_vt);
        accel_into(s, stage_v, stage_vt, v_r, lap, vt_r, &mut ka[stage]);
    }
    let c = dt / 6.0;
    let mut peak = 0.0f64;
    let mut finite = true;
    for j in 0..len {
        let v = s.v.values[j] + c * (kv[0][j] + 2.0 * kv[1][j] + 2.0 * kv[2][j] + kv[3][j]);
        let vt = s.vt.values[j] + c * (ka[0][j] + 2.0 * ka[1][j] + 2.0 * ka[2][j] + ka[3][j]);
        finite &= v.is_finite() && vt.is_finite();
        peak = peak.max(v.abs());
        s.v.values[j] = v;
        s.vt.values[j] = vt;
    }
    s.t += dt;
    if !finite {
        return Err(Error::BlowUp { t: s.t, reason: "non-finite field".into() });
    }
    if peak > HARD_STOP {
        return Err(Error::BlowUp { t: s.t, reason: format!("sup |v| = {peak:e} exceeds {HARD_STOP:e}") });
    }
    Ok(())
}

/// Classical four-stage step of the first-order system `(v, v_t)`.
/// Negative `dt` integrates backwards.
pub fn step_rk4(s: &FieldState, dt: f64) -> Result<FieldState> {
    check_cfl(s, dt)?;
    let mut next = s.clone();
    let mut ws = Workspace::new(s.grid.len());
    step_in_place(&mut next, dt, &mut ws)?;
    Ok(next)
}
