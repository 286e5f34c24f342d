//! Trace CSV and snapshot files.

use crate::error::{LabError, LabResult};
use skyrmelab::solver::{DiagnosticsTrace, FieldState};
use skyrmelab::{ModelSpec, RadialGrid};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub const TRACE_HEADER: &str = "t,total_energy,sup_abs_u,sup_abs_u_r,lightcone_energy,deficit_if_enabled,blowup_flag";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.16e}"))
}

pub fn trace_csv(trace: &DiagnosticsTrace) -> String {
    let mut s = String::with_capacity(128 * (trace.rows.len() + 1));
    s.push_str(TRACE_HEADER);
    s.push('\n');
    for r in &trace.rows {
        let _ = writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{},{}",
            r.t,
            r.total_energy,
            r.sup_abs_u,
            r.sup_abs_u_r,
            opt(r.lightcone_energy),
            opt(r.deficit),
            u8::from(r.blowup)
        );
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> LabResult<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| LabError::io(path, e))
}

pub fn read_text(path: &Path) -> LabResult<String> {
    fs::read_to_string(path).map_err(|e| LabError::io(path, e))
}

/// Plain-text snapshot: three header lines, then `r v vt` per node with
/// 17 significant digits, which round-trips every `f64` exactly.
pub fn snapshot_text(s: &FieldState) -> String {
    let g = &s.grid;
    let mut out = String::with_capacity(80 * (g.len() + 3));
    let _ = writeln!(out, "# t={:.16e}", s.t);
    let _ = writeln!(out, "# model={} alpha={:.16e}", s.model.kind, s.model.alpha);
    let _ = writeln!(out, "# N={}  R={:.16e}", g.cells(), g.r_max());
    for j in 0..g.len() {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", g.r(j), s.v.values[j], s.vt.values[j]);
    }
    out
}

pub fn write_snapshot(path: &Path, s: &FieldState) -> LabResult<()> {
    write_text(path, &snapshot_text(s))
}

fn header_value<'a>(line: Option<&'a str>, key: &str, path: &Path) -> LabResult<&'a str> {
    let bad = || LabError::Format { path: path.to_path_buf(), message: format!("missing `{key}=` header") };
    let line = line.ok_or_else(bad)?;
    let start = line.find(&format!("{key}=")).ok_or_else(bad)? + key.len() + 1;
    Ok(line[start..].split_whitespace().next().unwrap_or(""))
}

pub fn parse_snapshot(text: &str, path: &Path) -> LabResult<FieldState> {
    let fmt = |message: String| LabError::Format { path: path.to_path_buf(), message };
    let mut lines = text.lines();
    let (l1, l2, l3) = (lines.next(), lines.next(), lines.next());
    let num = |s: &str, what: &str| s.parse::<f64>().map_err(|_| fmt(format!("bad {what} `{s}`")));
    let t = num(header_value(l1, "t", path)?, "time")?;
    let kind = header_value(l2, "model", path)?
        .parse()
        .map_err(|e: skyrmelab::Error| fmt(e.to_string()))?;
    let alpha = match l2.and_then(|l| l.find("alpha=")) {
        Some(_) => num(header_value(l2, "alpha", path)?, "alpha")?,
        None => 1.0,
    };
    let model = ModelSpec::new(kind, alpha)?;
    let cells: usize = header_value(l3, "N", path)?.parse().map_err(|_| fmt("bad N".into()))?;
    let r_max = num(header_value(l3, "R", path)?, "R")?;
    let grid = RadialGrid::new(r_max, cells)?;
    let mut v = Vec::with_capacity(grid.len());
    let mut vt = Vec::with_capacity(grid.len());
    for (i, line) in lines.filter(|l| !l.trim().is_empty() && !l.starts_with('#')).enumerate() {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 3 {
            return Err(fmt(format!("data row {} has {} columns", i + 1, cols.len())));
        }
        v.push(num(cols[1], "v")?);
        vt.push(num(cols[2], "vt")?);
    }
    if v.len() != grid.len() {
        return Err(fmt(format!("{} data rows for N = {cells}", v.len())));
    }
    Ok(FieldState::new(grid, model, t, v, vt)?)
}

pub fn read_snapshot(path: &Path) -> LabResult<FieldState> {
    parse_snapshot(&read_text(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_round_trip_is_exact() {
        let g = RadialGrid::new(7.3, 64).unwrap();
        let s = FieldState::from_fn(g, ModelSpec::skyrme(0.37).unwrap(), 1.0 / 3.0, |r| (-r * r).exp() / 7.0, |r| r.sin() * 1e-300);
        let back = parse_snapshot(&snapshot_text(&s), Path::new("mem")).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn malformed_snapshots_are_rejected() {
        let p = Path::new("mem");
        assert!(matches!(parse_snapshot("", p), Err(LabError::Format { .. })));
        let g = RadialGrid::new(1.0, 8).unwrap();
        let good = snapshot_text(&FieldState::zeros(g, ModelSpec::wave_map()));
        let short: String = good.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_snapshot(&short, p), Err(LabError::Format { .. })));
    }

    #[test]
    fn trace_columns() {
        let t = DiagnosticsTrace::default();
        assert_eq!(trace_csv(&t), format!("{TRACE_HEADER}\n"));
    }
}
