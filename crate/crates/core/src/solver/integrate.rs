use super::state::FieldState;
use super::stepper::{check_cfl, step_in_place, Workspace};
use crate::error::{config, Error, Result};
use crate::grid;
use crate::model::ModelSpec;

/// One diagnostics sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub total_energy: f64,
    pub sup_abs_u: f64,
    pub sup_abs_u_r: f64,
    /// Energy in `r <= t0 - t` when a light-cone apex `t0` is configured.
    pub lightcone_energy: Option<f64>,
    /// Distance to the companion evolution, when one runs alongside.
    pub deficit: Option<f64>,
    pub blowup: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsTrace {
    pub rows: Vec<TraceRow>,
    /// Set when the run was cut short.
    pub blowup: bool,
    pub stop_reason: Option<String>,
}

impl DiagnosticsTrace {
    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Largest relative deviation of the total energy from its first value.
    pub fn energy_drift(&self) -> f64 {
        let Some(first) = self.rows.first() else { return 0.0 };
        let e0 = first.total_energy;
        self.rows
            .iter()
            .map(|r| ((r.total_energy - e0) / e0).abs())
            .fold(0.0, f64::max)
    }

    pub fn sup_abs_u(&self) -> f64 {
        self.rows.iter().map(|r| r.sup_abs_u).fold(0.0, f64::max)
    }

    /// `max_t sup|u_r| / sup|u_r|(0)`.
    pub fn growth_factor(&self) -> f64 {
        let Some(first) = self.rows.first() else { return 1.0 };
        let peak = self.rows.iter().map(|r| r.sup_abs_u_r).fold(first.sup_abs_u_r, f64::max);
        if first.sup_abs_u_r > 0.0 {
            peak / first.sup_abs_u_r
        } else {
            1.0
        }
    }
}

/// Observer configuration for [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrateOptions {
    /// Steps between trace rows (the first and last state are always recorded).
    pub cadence: usize,
    /// Apex time of the backward light cone whose energy is tracked.
    pub lightcone_t0: Option<f64>,
    /// Stop as soon as `sup|u_r|` exceeds this multiple of its initial value.
    pub stop_on_growth: Option<f64>,
    /// Evolve a copy of the initial data under this model and record the
    /// deficit norm between the two.
    pub companion: Option<ModelSpec>,
    /// Trace rows between snapshot callbacks; `None` disables snapshots.
    pub snapshot_every: Option<usize>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { cadence: 1, lightcone_t0: None, stop_on_growth: None, companion: None, snapshot_every: None }
    }
}

/// `sqrt(∫ (Δv_r² + Δv_t² + Δv²) r⁴ dr)`, the weighted-Sobolev proxy of the
/// energy-space distance between two states on the same grid.
pub fn deficit_norm(a: &FieldState, b: &FieldState) -> f64 {
    let g = &a.grid;
    let ar = a.v_r();
    let br = b.v_r();
    let w = grid::quadrature_weights(g, grid::Parity::Even);
    let mut acc = 0.0;
    for j in 0..g.len() {
        let dv = a.v.values[j] - b.v.values[j];
        let dvt = a.vt.values[j] - b.vt.values[j];
        let dvr = ar.values[j] - br.values[j];
        acc += w[j] * g.r(j).powi(4) * (dv * dv + dvt * dvt + dvr * dvr);
    }
    acc.max(0.0).sqrt()
}

fn row(s: &FieldState, opts: &IntegrateOptions, companion: Option<&FieldState>) -> TraceRow {
    TraceRow {
        t: s.t,
        total_energy: s.energy(),
        sup_abs_u: s.sup_abs_u(),
        sup_abs_u_r: s.sup_abs_u_r(),
        lightcone_energy: opts.lightcone_t0.map(|t0| s.energy_within(t0 - s.t)),
        deficit: companion.map(|c| deficit_norm(s, c)),
        blowup: false,
    }
}

/// Evolves `init` over a duration `t_span` with steps of at most `dt`. The
/// step is shrunk so that the run lands exactly on `init.t + t_span`.
/// Blow-up truncates the trace and sets its flag; it is not an error.
pub fn integrate(
    init: &FieldState,
    dt: f64,
    t_span: f64,
    opts: &IntegrateOptions,
    snapshot: &mut dyn FnMut(&FieldState),
) -> Result<(DiagnosticsTrace, FieldState)> {
    if !(t_span >= 0.0) {
        return Err(config(format!("integration span must be >= 0, got {t_span}")));
    }
    if !(dt > 0.0) {
        return Err(config(format!("time step must be positive, got {dt}")));
    }
    check_cfl(init, dt)?;
    if opts.cadence == 0 {
        return Err(config("observer cadence must be >= 1"));
    }
    let steps = (t_span / dt - 1e-9).ceil().max(0.0) as usize;
    let h = if steps > 0 { t_span / steps as f64 } else { 0.0 };
    let t_end = init.t + t_span;

    let mut state = init.clone();
    let mut comp = opts.companion.map(|m| init.with_model(m));
    let mut ws = Workspace::new(init.grid.len());
    let mut ws_c = comp.as_ref().map(|c| Workspace::new(c.grid.len()));

    let mut trace = DiagnosticsTrace::default();
    let first = row(&state, opts, comp.as_ref());
    let growth_ref = first.sup_abs_u_r;
    trace.rows.push(first);
    let mut rows_since_snapshot = 0usize;
    if opts.snapshot_every.is_some() {
        snapshot(&state);
    }

    for k in 1..=steps {
        let mut result = step_in_place(&mut state, h, &mut ws);
        if let (Ok(()), Some(c), Some(w)) = (&result, comp.as_mut(), ws_c.as_mut()) {
            result = step_in_place(c, h, w);
        }
        if k == steps {
            state.t = t_end;
            if let Some(c) = comp.as_mut() {
                c.t = t_end;
            }
        }
        if let Err(e) = result {
            let reason = match e {
                Error::BlowUp { reason, .. } => reason,
                other => return Err(other),
            };
            trace.blowup = true;
            trace.stop_reason = Some(reason);
            if let Some(last) = trace.rows.last_mut() {
                last.blowup = true;
            }
            return Ok((trace, state));
        }
        let check_growth = opts.stop_on_growth.filter(|_| growth_ref > 0.0);
        let tripped = check_growth.is_some_and(|g| state.sup_abs_u_r() >= g * growth_ref);
        if k % opts.cadence == 0 || k == steps || tripped {
            let mut r = row(&state, opts, comp.as_ref());
            r.blowup = tripped;
            trace.rows.push(r);
            rows_since_snapshot += 1;
            if let Some(every) = opts.snapshot_every {
                if rows_since_snapshot >= every || k == steps || tripped {
                    snapshot(&state);
                    rows_since_snapshot = 0;
                }
            }
        }
        if tripped {
            trace.blowup = true;
            trace.stop_reason = Some(format!(
                "sup|u_r| grew by more than {}x",
                check_growth.unwrap_or_default()
            ));
            return Ok((trace, state));
        }
    }
    Ok((trace, state))
}

/// [`integrate`] without snapshot output.
pub fn evolve(init: &FieldState, dt: f64, t_span: f64, opts: &IntegrateOptions) -> Result<(DiagnosticsTrace, FieldState)> {
    integrate(init, dt, t_span, opts, &mut |_| {})
}
