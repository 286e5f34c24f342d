use std::fmt;
use std::time::Duration;

/// One checked criterion with its measurement and tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub name: String,
    pub measured: f64,
    /// Human-readable acceptance condition, e.g. `<= 1e-6`.
    pub tolerance: String,
    pub pass: bool,
}

impl Criterion {
    pub fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, tolerance: format!("<= {limit:e}"), pass: measured <= limit }
    }

    pub fn at_least(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self { name: name.into(), measured, tolerance: format!(">= {limit:e}"), pass: measured >= limit }
    }

    pub fn within(name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance: format!("in [{lo}, {hi}]"),
            pass: (lo..=hi).contains(&measured),
        }
    }

    pub fn holds(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), measured: f64::from(u8::from(pass)), tolerance: "true".into(), pass }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioReport {
    pub id: String,
    pub criteria: Vec<Criterion>,
    /// Named measurements that carry no pass/fail judgement.
    pub values: Vec<(String, f64)>,
    pub runtime: Duration,
}

impl ScenarioReport {
    pub fn new(id: impl Into<String>) -> Self {
        Self { id: id.into(), ..Self::default() }
    }

    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|v| v.1)
    }

    pub fn push(&mut self, c: Criterion) {
        self.criteria.push(c);
    }

    pub fn record(&mut self, name: impl Into<String>, v: f64) {
        self.values.push((name.into(), v));
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({:.2?})", self.id, self.runtime)?;
        for (name, v) in &self.values {
            writeln!(f, "  {name:<28} {v:.6e}")?;
        }
        for c in &self.criteria {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "  [{mark}] {:<40} {:.6e}  ({})", c.name, c.measured, c.tolerance)?;
        }
        Ok(())
    }
}
