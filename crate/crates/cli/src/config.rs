//! `key = value` configuration files with `[section]` headers.
//!
//! Parsing never stops at the first problem: every unknown key, bad value and
//! missing section is collected and reported with its line number.

use crate::error::{ConfigIssue, LabError, LabResult};
use skyrmelab::{ModelKind, ModelSpec, OuterBoundary};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Upper end of the accepted `cfl` range.
pub const MAX_CFL: f64 = 0.9;

/// Untyped `section.key -> (value, line)` view of a file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, usize)>,
    sections: BTreeMap<String, usize>,
}

impl RawConfig {
    pub fn parse(text: &str) -> (Self, Vec<ConfigIssue>) {
        let mut raw = Self::default();
        let mut issues = Vec::new();
        let mut section: Option<String> = None;
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            let line = line.split(['#', ';']).next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                match rest.strip_suffix(']') {
                    Some(name) if !name.trim().is_empty() => {
                        let name = name.trim().to_ascii_lowercase();
                        if raw.sections.insert(name.clone(), n).is_some() {
                            issues.push(issue(n, format!("section [{name}] repeated")));
                        }
                        section = Some(name);
                    }
                    _ => issues.push(issue(n, format!("malformed section header `{line}`"))),
                }
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                issues.push(issue(n, format!("expected `key = value`, found `{line}`")));
                continue;
            };
            let Some(sec) = &section else {
                issues.push(issue(n, format!("key `{}` appears before any section", key.trim())));
                continue;
            };
            let full = format!("{sec}.{}", key.trim().to_ascii_lowercase());
            if raw.entries.insert(full.clone(), (value.trim().to_string(), n)).is_some() {
                issues.push(issue(n, format!("`{full}` set twice")));
            }
        }
        (raw, issues)
    }

    /// Overrides or inserts `section.key`; used by sweeps.
    pub fn set(&mut self, key: &str, value: &str) {
        if let Some((sec, _)) = key.split_once('.') {
            self.sections.entry(sec.to_string()).or_insert(0);
        }
        let line = self.entries.get(key).map_or(0, |e| e.1);
        self.entries.insert(key.to_string(), (value.to_string(), line));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.0.as_str())
    }
}

fn issue(line: usize, message: impl Into<String>) -> ConfigIssue {
    ConfigIssue { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `v = A exp(-((r - c)/w)^2)`, at rest.
    Gaussian { amplitude: f64, width: f64, center: f64 },
    /// Time-reversed self-similar data `u = 2 arctan(r / T)` focusing at `T`.
    TurokSpergel { blowup_time: f64 },
    /// The exact 5D free wave built from a Gaussian radiation profile.
    FreeWaveExact { amplitude: f64, width: f64, center: f64 },
    /// A snapshot file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    pub lightcone_t0: Option<f64>,
    pub stop_on_growth: Option<f64>,
    pub max_energy_drift: Option<f64>,
    pub expect_blowup: Option<bool>,
    pub max_growth: Option<f64>,
    pub max_profile_fit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub name: String,
    pub model: ModelSpec,
    pub r_max: f64,
    pub cells: usize,
    pub boundary: OuterBoundary,
    pub t_end: f64,
    pub cfl: f64,
    pub dt: Option<f64>,
    pub initial: InitialData,
    pub cadence: usize,
    /// Trace rows between snapshots; `None` writes the first and last only.
    pub snapshot_every: Option<usize>,
    pub output_dir: PathBuf,
    pub diagnostics: Diagnostics,
    /// Handoff time after which a free-wave companion is evolved alongside.
    pub scattering_handoff: Option<f64>,
}

/// Keys accepted per section.
const SCHEMA: &[(&str, &[&str])] = &[
    ("model", &["kind", "alpha"]),
    ("grid", &["r_max", "cells", "boundary"]),
    ("time", &["t_end", "cfl", "dt"]),
    ("initial", &["family", "amplitude", "width", "center", "blowup_time", "path"]),
    ("output", &["name", "dir", "cadence", "snapshot_every"]),
    (
        "diagnostics",
        &["lightcone_t0", "stop_on_growth", "max_energy_drift", "expect_blowup", "max_growth", "max_profile_fit"],
    ),
    ("scattering", &["enabled", "handoff"]),
];

const REQUIRED: &[&str] = &["model", "grid", "time", "initial"];

/// Typed reader over a [`RawConfig`] that records every problem it meets.
struct Reader<'a> {
    raw: &'a RawConfig,
    issues: Vec<ConfigIssue>,
}

impl Reader<'_> {
    fn line(&self, key: &str) -> usize {
        self.raw.entries.get(key).map_or(0, |e| e.1)
    }

    fn fail(&mut self, key: &str, msg: impl std::fmt::Display) {
        let line = self.line(key);
        self.issues.push(issue(line, format!("`{key}`: {msg}")));
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Option<T> {
        let text = self.raw.get(key)?;
        match text.parse::<T>() {
            Ok(v) => Some(v),
            Err(_) => {
                let text = text.to_string();
                self.fail(key, format!("expected {what}, found `{text}`"));
                None
            }
        }
    }

    fn real(&mut self, key: &str, default: Option<f64>, ok: impl Fn(f64) -> bool, range: &str) -> Option<f64> {
        let v = match self.parsed::<f64>(key, "a number") {
            Some(v) => v,
            None if self.raw.get(key).is_some() => return None,
            None => return default,
        };
        if !v.is_finite() || !ok(v) {
            self.fail(key, format!("{v} out of range {range}"));
            return None;
        }
        Some(v)
    }

    fn required_real(&mut self, key: &str, ok: impl Fn(f64) -> bool, range: &str) -> Option<f64> {
        if self.raw.get(key).is_none() {
            self.issues.push(issue(0, format!("missing required key `{key}`")));
            return None;
        }
        self.real(key, None, ok, range)
    }

    fn count(&mut self, key: &str, default: Option<usize>) -> Option<usize> {
        match self.parsed::<usize>(key, "a non-negative integer") {
            Some(v) => Some(v),
            None if self.raw.get(key).is_some() => None,
            None => default,
        }
    }

    fn flag(&mut self, key: &str) -> Option<bool> {
        let text = self.raw.get(key)?.to_ascii_lowercase();
        match text.as_str() {
            "true" | "yes" | "on" | "1" => Some(true),
            "false" | "no" | "off" | "0" => Some(false),
            _ => {
                self.fail(key, format!("expected true or false, found `{text}`"));
                None
            }
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> LabResult<Self> {
        let (raw, mut issues) = RawConfig::parse(text);
        match Self::from_raw(&raw) {
            Ok(c) if issues.is_empty() => Ok(c),
            Ok(_) => Err(LabError::Config(issues)),
            Err(LabError::Config(more)) => {
                issues.extend(more);
                issues.sort_by_key(|i| i.line);
                Err(LabError::Config(issues))
            }
            Err(e) => Err(e),
        }
    }

    pub fn from_raw(raw: &RawConfig) -> LabResult<Self> {
        let mut rd = Reader { raw, issues: Vec::new() };

        for (section, line) in &raw.sections {
            if !SCHEMA.iter().any(|(s, _)| s == section) {
                rd.issues.push(issue(*line, format!("unknown section [{section}]")));
            }
        }
        for req in REQUIRED {
            if !raw.sections.contains_key(*req) {
                rd.issues.push(issue(0, format!("missing section [{req}]")));
            }
        }
        for (key, (_, line)) in &raw.entries {
            let (sec, k) = key.split_once('.').unwrap_or((key, ""));
            if let Some((_, keys)) = SCHEMA.iter().find(|(s, _)| *s == sec) {
                if !keys.contains(&k) {
                    rd.issues.push(issue(*line, format!("unknown key `{k}` in [{sec}]")));
                }
            }
        }

        // [model]
        let kind = match raw.get("model.kind") {
            None => {
                rd.issues.push(issue(0, "missing required key `model.kind`"));
                None
            }
            Some(text) => match text.parse::<ModelKind>() {
                Ok(k) => Some(k),
                Err(e) => {
                    rd.fail("model.kind", e);
                    None
                }
            },
        };
        let alpha = rd.real("model.alpha", Some(1.0), |a| a > 0.0, "(0, inf)");
        let model = match (kind, alpha) {
            (Some(k), Some(a)) => match ModelSpec::new(k, a) {
                Ok(m) => Some(m),
                Err(e) => {
                    rd.fail("model.alpha", e);
                    None
                }
            },
            _ => None,
        };

        // [grid]
        let r_max = rd.required_real("grid.r_max", |r| r > 0.0, "(0, inf)");
        let cells = if raw.get("grid.cells").is_none() {
            rd.issues.push(issue(0, "missing required key `grid.cells`"));
            None
        } else {
            rd.count("grid.cells", None)
        };
        let cells = match cells {
            Some(n) if n >= 8 && n.is_power_of_two() => Some(n),
            Some(n) => {
                rd.fail("grid.cells", format!("{n} must be a power of two >= 8"));
                None
            }
            None => None,
        };
        let boundary = match raw.get("grid.boundary").map(str::to_ascii_lowercase).as_deref() {
            None | Some("isolated") => Some(OuterBoundary::Isolated),
            Some("sommerfeld") => Some(OuterBoundary::Sommerfeld),
            Some(other) => {
                let other = other.to_string();
                rd.fail("grid.boundary", format!("expected isolated or sommerfeld, found `{other}`"));
                None
            }
        };

        // [time]
        let t_end = rd.required_real("time.t_end", |t| t >= 0.0, "[0, inf)");
        let cfl = rd.real("time.cfl", Some(skyrmelab::solver::CFL), |c| c > 0.0 && c <= MAX_CFL, "(0, 0.9]");
        let cfl = match cfl {
            Some(c) if c > skyrmelab::solver::CFL => {
                rd.fail("time.cfl", format!("{c} exceeds the RK4 stepper limit {}", skyrmelab::solver::CFL));
                None
            }
            other => other,
        };
        let dt = rd.real("time.dt", None, |d| d > 0.0, "(0, inf)");
        if let (Some(dt), Some(r), Some(n)) = (dt, r_max, cells) {
            let limit = skyrmelab::solver::CFL * r / n as f64;
            if dt > limit * (1.0 + 1e-12) {
                rd.fail("time.dt", format!("{dt} violates the CFL limit {limit}"));
            }
        }

        // [initial]
        let family = raw.get("initial.family").map(str::to_ascii_lowercase);
        let initial = match family.as_deref() {
            None => {
                rd.issues.push(issue(0, "missing required key `initial.family`"));
                None
            }
            Some("gaussian") => {
                let amplitude = rd.real("initial.amplitude", Some(0.1), |_| true, "(-inf, inf)");
                let width = rd.real("initial.width", Some(1.0), |w| w > 0.0, "(0, inf)");
                let center = rd.real("initial.center", Some(0.0), |_| true, "(-inf, inf)");
                match (amplitude, width, center) {
                    (Some(amplitude), Some(width), Some(center)) => {
                        Some(InitialData::Gaussian { amplitude, width, center })
                    }
                    _ => None,
                }
            }
            Some("turok-spergel") => rd
                .real("initial.blowup_time", Some(1.0), |t| t > 0.0, "(0, inf)")
                .map(|blowup_time| InitialData::TurokSpergel { blowup_time }),
            Some("free-wave-exact") => {
                let amplitude = rd.real("initial.amplitude", Some(1.0), |_| true, "(-inf, inf)");
                let width = rd.real("initial.width", Some(1.0), |w| w > 0.0, "(0, inf)");
                let center = rd.real("initial.center", Some(2.0), |_| true, "(-inf, inf)");
                match (amplitude, width, center) {
                    (Some(amplitude), Some(width), Some(center)) => {
                        Some(InitialData::FreeWaveExact { amplitude, width, center })
                    }
                    _ => None,
                }
            }
            Some("file") => match raw.get("initial.path") {
                Some(p) => Some(InitialData::File { path: PathBuf::from(p) }),
                None => {
                    rd.issues.push(issue(rd.line("initial.family"), "family `file` needs `initial.path`"));
                    None
                }
            },
            Some(other) => {
                let other = other.to_string();
                rd.fail(
                    "initial.family",
                    format!("unknown family `{other}` (gaussian, turok-spergel, free-wave-exact, file)"),
                );
                None
            }
        };

        // [output]
        let name = raw.get("output.name").unwrap_or("run").to_string();
        let output_dir = PathBuf::from(raw.get("output.dir").unwrap_or(&name));
        let cadence = match rd.count("output.cadence", Some(10)) {
            Some(0) => {
                rd.fail("output.cadence", "must be >= 1");
                None
            }
            other => other,
        };
        let snapshot_every = rd.count("output.snapshot_every", Some(0)).map(|n| (n > 0).then_some(n));

        // [diagnostics]
        let diagnostics = Diagnostics {
            lightcone_t0: rd.real("diagnostics.lightcone_t0", None, |t| t > 0.0, "(0, inf)"),
            stop_on_growth: rd.real("diagnostics.stop_on_growth", None, |g| g > 1.0, "(1, inf)"),
            max_energy_drift: rd.real("diagnostics.max_energy_drift", None, |d| d > 0.0, "(0, inf)"),
            expect_blowup: rd.flag("diagnostics.expect_blowup"),
            max_growth: rd.real("diagnostics.max_growth", None, |g| g >= 1.0, "[1, inf)"),
            max_profile_fit: rd.real("diagnostics.max_profile_fit", None, |e| e > 0.0, "(0, inf)"),
        };

        // [scattering]
        let enabled = rd.flag("scattering.enabled").unwrap_or(false);
        let handoff = rd.real("scattering.handoff", Some(0.0), |t| t >= 0.0, "[0, inf)");
        if let (Some(h), Some(t)) = (handoff, t_end) {
            if enabled && h >= t {
                rd.fail("scattering.handoff", format!("{h} must be below time.t_end = {t}"));
            }
        }

        if !rd.issues.is_empty() {
            return Err(LabError::Config(rd.issues));
        }
        // every None above pushed an issue
        fn unwrap<T>(o: Option<T>) -> T {
            o.expect("validated")
        }
        Ok(Self {
            name,
            model: unwrap(model),
            r_max: unwrap(r_max),
            cells: unwrap(cells),
            boundary: unwrap(boundary),
            t_end: unwrap(t_end),
            cfl: unwrap(cfl),
            dt,
            initial: unwrap(initial),
            cadence: unwrap(cadence),
            snapshot_every: unwrap(snapshot_every),
            output_dir,
            diagnostics,
            scattering_handoff: if enabled { handoff } else { None },
        })
    }

    pub fn dr(&self) -> f64 {
        self.r_max / self.cells as f64
    }

    /// Time step: `dt` if given, else `cfl * dr`.
    pub fn time_step(&self) -> f64 {
        self.dt.unwrap_or(self.cfl * self.dr())
    }

    /// The fully resolved configuration, defaults included, in the input syntax.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[model]\nkind = {}\nalpha = {}", self.model.kind, self.model.alpha);
        let boundary = match self.boundary {
            OuterBoundary::Isolated => "isolated",
            OuterBoundary::Sommerfeld => "sommerfeld",
        };
        let _ = writeln!(s, "\n[grid]\nr_max = {}\ncells = {}\nboundary = {boundary}", self.r_max, self.cells);
        let _ = writeln!(s, "\n[time]\nt_end = {}\ncfl = {}\ndt = {}", self.t_end, self.cfl, self.time_step());
        let _ = writeln!(s, "\n[initial]");
        match &self.initial {
            InitialData::Gaussian { amplitude, width, center } => {
                let _ = writeln!(s, "family = gaussian\namplitude = {amplitude}\nwidth = {width}\ncenter = {center}");
            }
            InitialData::TurokSpergel { blowup_time } => {
                let _ = writeln!(s, "family = turok-spergel\nblowup_time = {blowup_time}");
            }
            InitialData::FreeWaveExact { amplitude, width, center } => {
                let _ = writeln!(s, "family = free-wave-exact\namplitude = {amplitude}\nwidth = {width}\ncenter = {center}");
            }
            InitialData::File { path } => {
                let _ = writeln!(s, "family = file\npath = {}", path.display());
            }
        }
        let _ = writeln!(
            s,
            "\n[output]\nname = {}\ndir = {}\ncadence = {}\nsnapshot_every = {}",
            self.name,
            self.output_dir.display(),
            self.cadence,
            self.snapshot_every.unwrap_or(0)
        );
        let d = &self.diagnostics;
        let _ = writeln!(s, "\n[diagnostics]");
        let reals = [
            ("lightcone_t0", d.lightcone_t0),
            ("stop_on_growth", d.stop_on_growth),
            ("max_energy_drift", d.max_energy_drift),
            ("max_growth", d.max_growth),
            ("max_profile_fit", d.max_profile_fit),
        ];
        for (key, v) in reals {
            if let Some(v) = v {
                let _ = writeln!(s, "{key} = {v}");
            }
        }
        if let Some(b) = d.expect_blowup {
            let _ = writeln!(s, "expect_blowup = {b}");
        }
        let _ = writeln!(
            s,
            "\n[scattering]\nenabled = {}\nhandoff = {}",
            self.scattering_handoff.is_some(),
            self.scattering_handoff.unwrap_or(0.0)
        );
        s
    }
}
