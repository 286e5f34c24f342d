//! Parameter sweeps: independent runs executed in parallel, aggregated in
//! input order.

use crate::config::{RawConfig, RunConfig};
use crate::error::{LabError, LabResult};
use crate::io;
use crate::run::{run, RunOutcome};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

/// `section.key=v1,v2,...`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepAxis {
    pub key: String,
    pub values: Vec<String>,
}

impl FromStr for SweepAxis {
    type Err = LabError;

    fn from_str(s: &str) -> LabResult<Self> {
        let (key, list) = s
            .split_once('=')
            .ok_or_else(|| LabError::config(format!("sweep axis `{s}` is not of the form key=v1,v2")))?;
        let key = key.trim().to_ascii_lowercase();
        if !key.contains('.') {
            return Err(LabError::config(format!("sweep key `{key}` must be section.key")));
        }
        let values: Vec<String> = list.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        if values.len() < 2 {
            return Err(LabError::config(format!("sweep over `{key}` needs at least two values")));
        }
        Ok(Self { key, values })
    }
}

#[derive(Debug)]
pub struct SweepRow {
    pub run_id: String,
    pub value: String,
    pub outcome: LabResult<RunOutcome>,
    /// `log2` of the error ratio to the previous row (resolution sweeps).
    pub observed_order: Option<f64>,
    /// Previous row's deficit divided by this row's.
    pub deficit_ratio: Option<f64>,
}

#[derive(Debug)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.outcome.as_ref().is_ok_and(|o| o.report.passed()))
    }

    pub fn values(&self, name: &str) -> Vec<Option<f64>> {
        self.rows
            .iter()
            .map(|r| r.outcome.as_ref().ok().and_then(|o| o.report.value(name)))
            .collect()
    }

    pub fn csv(&self) -> String {
        let mut s = format!(
            "run_id,{},status,t_final,energy_drift,sup_abs_u,growth_factor,blowup,deficit,deficit_ratio,observed_order\n",
            self.axis.key
        );
        let opt = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:.10e}"));
        for row in &self.rows {
            match &row.outcome {
                Ok(o) => {
                    let r = &o.report;
                    let status = if r.passed() { "ok" } else { "fail" };
                    let _ = writeln!(
                        s,
                        "{},{},{status},{},{},{},{},{},{},{},{}",
                        row.run_id,
                        row.value,
                        opt(r.value("t_final")),
                        opt(r.value("energy_drift")),
                        opt(r.value("sup_abs_u")),
                        opt(r.value("growth_factor")),
                        r.value("blowup").unwrap_or(0.0),
                        opt(r.value("deficit")),
                        opt(row.deficit_ratio),
                        opt(row.observed_order),
                    );
                }
                Err(e) => {
                    let msg = e.to_string().replace(['\n', ','], " ");
                    let _ = writeln!(s, "{},{},error: {msg},,,,,,,,", row.run_id, row.value);
                }
            }
        }
        s
    }
}

fn sanitize(v: &str) -> String {
    v.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect()
}

/// Runs the template once per axis value in `out_dir/<run_id>/` and writes
/// `out_dir/sweep.csv`. Failing members are recorded, not fatal.
pub fn sweep(template: &RawConfig, axis: &SweepAxis, out_dir: &Path) -> LabResult<SweepReport> {
    if axis.values.len() < 2 {
        return Err(LabError::config(format!("sweep over `{}` needs at least two values", axis.key)));
    }
    let members: Vec<(String, String, LabResult<RunConfig>)> = axis
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut raw = template.clone();
            raw.set(&axis.key, v);
            let id = format!("run{i:03}_{}", sanitize(v));
            (id, v.clone(), RunConfig::from_raw(&raw))
        })
        .collect();
    let outcomes: Vec<LabResult<RunOutcome>> = members
        .par_iter()
        .map(|(id, _, cfg)| match cfg {
            Ok(c) => run(c, &out_dir.join(id)),
            Err(e) => Err(LabError::config(e.to_string())),
        })
        .collect();

    let resolution = axis.key == "grid.cells";
    let mut rows: Vec<SweepRow> = members
        .into_iter()
        .zip(outcomes)
        .map(|((run_id, value, _), outcome)| SweepRow { run_id, value, outcome, observed_order: None, deficit_ratio: None })
        .collect();
    for i in 1..rows.len() {
        let d = |r: &SweepRow| r.outcome.as_ref().ok().and_then(|o| o.report.value("deficit"));
        if let (Some(a), Some(b)) = (d(&rows[i - 1]), d(&rows[i])) {
            rows[i].deficit_ratio = Some(a / b);
        }
    }
    if resolution {
        fill_orders(&mut rows);
    }
    let report = SweepReport { axis: axis.clone(), rows };
    io::write_text(&out_dir.join("sweep.csv"), &report.csv())?;
    Ok(report)
}

/// Errors against the exact solution when one exists, else differences
/// between consecutive resolutions on the coarser nodes.
fn fill_orders(rows: &mut [SweepRow]) {
    let states: Vec<Option<&RunOutcome>> = rows.iter().map(|r| r.outcome.as_ref().ok()).collect();
    let exact_errors: Vec<Option<f64>> = states.iter().map(|o| o.and_then(|o| o.report.value("exact_error"))).collect();
    let errors: Vec<Option<f64>> = if exact_errors.iter().all(Option::is_some) {
        exact_errors
    } else {
        let mut e = vec![None];
        for w in states.windows(2) {
            e.push(match (w[0], w[1]) {
                (Some(a), Some(b)) if b.final_state.grid.cells() == 2 * a.final_state.grid.cells() => {
                    let (ca, cb) = (&a.final_state, &b.final_state);
                    Some((0..ca.grid.len()).map(|j| (ca.v.values[j] - cb.v.values[2 * j]).abs()).fold(0.0, f64::max))
                }
                _ => None,
            });
        }
        e
    };
    for i in 1..rows.len() {
        if let (Some(a), Some(b)) = (errors[i - 1], errors[i]) {
            rows[i].observed_order = Some((a / b).log2());
        }
    }
}

/// Convenience for callers holding only the file text.
pub fn sweep_text(template: &str, axis: &SweepAxis, out_dir: &Path) -> LabResult<SweepReport> {
    let (raw, issues) = RawConfig::parse(template);
    if !issues.is_empty() {
        return Err(LabError::Config(issues));
    }
    // validate the template itself before fanning out
    RunConfig::from_raw(&raw)?;
    sweep(&raw, axis, out_dir)
}
