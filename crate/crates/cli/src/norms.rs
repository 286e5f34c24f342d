//! Norm reports for snapshot files.

use crate::error::{LabError, LabResult};
use crate::io;
use skyrmelab::spectral::{besov_norm, sobolev_norm};
use skyrmelab::{DyadicCutoff, FieldState, RadialProfile};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Dyadic `B^s_{p,q}`.
    Besov,
    /// Homogeneous `H^s`; `p` and `q` are ignored.
    Sobolev,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormRequest {
    pub dim: usize,
    pub s: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub kind: NormKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormRow {
    pub profile_id: String,
    pub n: usize,
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub value: f64,
    pub truncation_bound: f64,
}

/// Parses `1.5,2` style lists; `inf` is accepted.
pub fn parse_list(name: &str, text: &str) -> LabResult<Vec<f64>> {
    let vals: Vec<f64> = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t {
                "inf" | "infinity" => Ok(f64::INFINITY),
                _ => t.parse::<f64>().map_err(|_| LabError::config(format!("--{name}: `{t}` is not a number"))),
            }
        })
        .collect::<LabResult<_>>()?;
    if vals.is_empty() {
        return Err(LabError::config(format!("--{name} needs at least one value")));
    }
    Ok(vals)
}

/// The 5D norms act on `v`; the 3D norms on `u = r v`.
pub fn profile_of(state: &FieldState, dim: usize) -> LabResult<RadialProfile> {
    match dim {
        5 => Ok(RadialProfile::new(5, state.grid, state.v.clone())?),
        3 => Ok(RadialProfile::new(3, state.grid, state.u())?),
        other => Err(LabError::config(format!("--dim must be 3 or 5, got {other}"))),
    }
}

pub fn norms_of(profile_id: &str, state: &FieldState, req: &NormRequest) -> LabResult<Vec<NormRow>> {
    let prof = profile_of(state, req.dim)?;
    let cutoff = DyadicCutoff::default();
    let mut rows = Vec::new();
    for &s in &req.s {
        match req.kind {
            NormKind::Sobolev => rows.push(NormRow {
                profile_id: profile_id.into(),
                n: req.dim,
                s,
                p: 2.0,
                q: 2.0,
                value: sobolev_norm(&prof, s)?,
                truncation_bound: 0.0,
            }),
            NormKind::Besov => {
                for &p in &req.p {
                    for &q in &req.q {
                        let b = besov_norm(&prof, s, p, q, &cutoff)?;
                        rows.push(NormRow {
                            profile_id: profile_id.into(),
                            n: req.dim,
                            s,
                            p,
                            q,
                            value: b.value,
                            truncation_bound: b.truncation_bound,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn norms_csv(rows: &[NormRow]) -> String {
    let mut out = String::from("profile_id,n,s,p,q,value,truncation_bound\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.16e},{:.6e}",
            r.profile_id, r.n, r.s, r.p, r.q, r.value, r.truncation_bound
        );
    }
    out
}

/// Reads a snapshot and evaluates every requested norm.
pub fn snapshot_norms(path: &Path, req: &NormRequest) -> LabResult<Vec<NormRow>> {
    let state = io::read_snapshot(path)?;
    let id = path.file_stem().map_or_else(|| "snapshot".to_string(), |s| s.to_string_lossy().into_owned());
    norms_of(&id, &state, req)
}

#[cfg(test)]
mod tests {
    use super::*;
    use skyrmelab::{ModelSpec, RadialGrid};

    fn gaussian() -> FieldState {
        let g = RadialGrid::new(20.0, 512).unwrap();
        FieldState::from_fn(g, ModelSpec::skyrme(1.0).unwrap(), 0.0, |r| (-r * r).exp(), |_| 0.0)
    }

    #[test]
    fn lists_parse() {
        assert_eq!(parse_list("q", "1, 2,inf").unwrap(), vec![1.0, 2.0, f64::INFINITY]);
        assert!(parse_list("s", "1,x").is_err());
    }

    #[test]
    fn one_row_per_combination() {
        let req = NormRequest { dim: 5, s: vec![1.0, 1.5], p: vec![2.0], q: vec![1.0, 2.0], kind: NormKind::Besov };
        let rows = norms_of("g", &gaussian(), &req).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.value > 0.0 && r.value.is_finite()));
        let csv = norms_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn dim_selects_field() {
        let req = NormRequest { dim: 3, s: vec![1.0], p: vec![2.0], q: vec![2.0], kind: NormKind::Sobolev };
        let u = norms_of("g", &gaussian(), &req).unwrap()[0].value;
        let req5 = NormRequest { dim: 5, ..req.clone() };
        let v = norms_of("g", &gaussian(), &req5).unwrap()[0].value;
        assert!(u != v);
        let bad = NormRequest { dim: 4, ..req };
        assert_eq!(norms_of("g", &gaussian(), &bad).unwrap_err().exit_code(), 2);
    }
}
