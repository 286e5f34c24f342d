use crate::error::{config, Result};
use crate::grid::{self, FieldSamples, Parity, RadialGrid};
use crate::model::{energy_density_v, ModelSpec, PointData};

/// Snapshot `(t, v, ∂_t v)` of the semilinear 5D formulation.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub v: FieldSamples,
    pub vt: FieldSamples,
    pub grid: RadialGrid,
    pub model: ModelSpec,
}

impl FieldState {
    pub fn new(grid: RadialGrid, model: ModelSpec, t: f64, v: Vec<f64>, vt: Vec<f64>) -> Result<Self> {
        if v.len() != grid.len() || vt.len() != grid.len() {
            return Err(config(format!(
                "state arrays ({}, {}) do not match the {} grid nodes",
                v.len(),
                vt.len(),
                grid.len()
            )));
        }
        Ok(Self {
            t,
            v: FieldSamples::new(v, Parity::Even),
            vt: FieldSamples::new(vt, Parity::Even),
            grid,
            model,
        })
    }

    /// Samples initial data `v(r)`, `v_t(r)` on the grid.
    pub fn from_fn(
        grid: RadialGrid,
        model: ModelSpec,
        t: f64,
        v: impl Fn(f64) -> f64,
        vt: impl Fn(f64) -> f64,
    ) -> Self {
        Self {
            t,
            v: grid.sample(Parity::Even, v),
            vt: grid.sample(Parity::Even, vt),
            grid,
            model,
        }
    }

    pub fn zeros(grid: RadialGrid, model: ModelSpec) -> Self {
        Self::from_fn(grid, model, 0.0, |_| 0.0, |_| 0.0)
    }

    /// Same data evolved under another equation.
    pub fn with_model(&self, model: ModelSpec) -> Self {
        Self { model, ..self.clone() }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.vt.is_finite()
    }

    pub fn v_r(&self) -> FieldSamples {
        let mut out = vec![0.0; self.grid.len()];
        grid::d_r_into(&self.v.values, Parity::Even, self.grid.dr(), &mut out);
        FieldSamples::new(out, Parity::Odd)
    }

    /// `u = r v`.
    pub fn u(&self) -> FieldSamples {
        let vals = self.v.values.iter().enumerate().map(|(j, v)| self.grid.r(j) * v).collect();
        FieldSamples::new(vals, Parity::Odd)
    }

    /// `u_r = v + r v_r`.
    pub fn u_r(&self) -> FieldSamples {
        let vr = self.v_r();
        let vals = (0..self.grid.len())
            .map(|j| self.v.values[j] + self.grid.r(j) * vr.values[j])
            .collect();
        FieldSamples::new(vals, Parity::Even)
    }

    /// Energy integrand (already weighted by `r^2`) on the nodes.
    pub fn energy_density(&self) -> FieldSamples {
        let vr = self.v_r();
        let vals = (0..self.grid.len())
            .map(|j| {
                let p = PointData::new(self.grid.r(j), self.v.values[j], vr.values[j], self.vt.values[j]);
                energy_density_v(&self.model, &p)
            })
            .collect();
        // every term carries u^2, r^2 or u^2 v^2: even in r
        FieldSamples::new(vals, Parity::Even)
    }

    pub fn energy(&self) -> f64 {
        grid::radial_integral(&self.energy_density(), &self.grid, 0)
    }

    /// Energy inside the ball `r <= radius` (trapezoid, linear in the last cell).
    pub fn energy_within(&self, radius: f64) -> f64 {
        if radius <= 0.0 {
            return 0.0;
        }
        let e = self.energy_density().values;
        let dr = self.grid.dr();
        let x = (radius / dr).min(self.grid.cells() as f64);
        let full = x.floor() as usize;
        let mut acc = 0.0;
        for j in 0..full {
            acc += 0.5 * dr * (e[j] + e[j + 1]);
        }
        let frac = x - full as f64;
        if frac > 0.0 && full < self.grid.cells() {
            let e_end = e[full] + frac * (e[full + 1] - e[full]);
            acc += 0.5 * frac * dr * (e[full] + e_end);
        }
        acc
    }

    pub fn sup_abs_u(&self) -> f64 {
        self.u().max_abs()
    }

    pub fn sup_abs_u_r(&self) -> f64 {
        self.u_r().max_abs()
    }
}
