//! Radial Fourier transform on `R^3` and `R^5` under the unitary convention
//! `f^(xi) = (2 pi)^{-n/2} ∫ f(x) e^{-i x·xi} dx`.

use crate::error::{config, domain, Result};
use crate::grid::{self, FieldSamples, Parity, RadialGrid};
use crate::model::series;
use std::f64::consts::PI;

/// Tail-to-peak ratio below which a profile counts as decayed.
pub const DECAY_TOLERANCE: f64 = 1e-10;

/// Nodes at the outer edge inspected by the decay test.
const TAIL_NODES: usize = 8;

/// `|S^{n-1}|` for the supported dimensions.
pub fn sphere_area(dim: usize) -> f64 {
    match dim {
        3 => 4.0 * PI,
        5 => 8.0 * PI * PI / 3.0,
        _ => f64::NAN,
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 3 || dim == 5 {
        Ok(())
    } else {
        Err(domain(format!("dimension must be 3 or 5, got {dim}")))
    }
}

/// A radial function on `R^n` sampled on a radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub dim: usize,
    pub grid: RadialGrid,
    pub samples: FieldSamples,
    /// Set when the samples near `R` are at most `1e-10` of the peak.
    pub decay_certified: bool,
}

impl RadialProfile {
    pub fn new(dim: usize, grid: RadialGrid, samples: FieldSamples) -> Result<Self> {
        check_dim(dim)?;
        if samples.len() != grid.len() {
            return Err(config(format!("{} samples for {} grid nodes", samples.len(), grid.len())));
        }
        if !samples.is_finite() {
            return Err(domain("profile samples must be finite"));
        }
        let peak = samples.max_abs();
        let tail = samples.values[samples.len() - TAIL_NODES.min(samples.len())..]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let decay_certified = tail <= DECAY_TOLERANCE * peak || peak == 0.0;
        Ok(Self { dim, grid, samples, decay_certified })
    }

    /// Samples an even profile `f(r)`.
    pub fn from_fn(dim: usize, grid: RadialGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let s = grid.sample(Parity::Even, f);
        Self::new(dim, grid, s)
    }

    pub fn values(&self) -> &[f64] {
        &self.samples.values
    }

    /// `||r^beta f||_{L^p(R^n)}`; `p = inf` takes the maximum over nodes
    /// (excluding the axis when `beta < 0`).
    pub fn weighted_lp_norm(&self, p: f64, beta: f64) -> f64 {
        let g = &self.grid;
        let start = usize::from(beta < 0.0);
        if p.is_infinite() {
            return (start..g.len())
                .map(|j| (weight(g.r(j), beta) * self.samples.values[j]).abs())
                .fold(0.0, f64::max);
        }
        let w = grid::quadrature_weights(g, Parity::Even.times_power(self.dim as i32 - 1));
        let power = beta * p + self.dim as f64 - 1.0;
        let integral: f64 = (0..g.len())
            .map(|j| {
                let r = g.r(j);
                let rp = if r == 0.0 {
                    if power == 0.0 { 1.0 } else { 0.0 }
                } else {
                    r.powf(power)
                };
                w[j] * self.samples.values[j].abs().powf(p) * rp
            })
            .sum();
        (sphere_area(self.dim) * integral.max(0.0)).powf(1.0 / p)
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        self.weighted_lp_norm(p, 0.0)
    }
}

fn weight(r: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        1.0
    } else {
        r.powf(beta)
    }
}

/// Radial Fourier transform samples on `rho_k = k pi / R`, `k = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    pub dim: usize,
    pub rho_nodes: Vec<f64>,
    pub fhat: Vec<f64>,
    /// Grid the transform was taken on; the inverse returns to it.
    pub source: RadialGrid,
}

impl SpectralProfile {
    pub fn d_rho(&self) -> f64 {
        PI / self.source.r_max()
    }

    pub fn rho_max(&self) -> f64 {
        *self.rho_nodes.last().unwrap_or(&0.0)
    }

    /// Trapezoid weights in `rho`; the integrands are even in `rho`.
    pub(crate) fn weights(&self) -> Vec<f64> {
        let h = self.d_rho();
        let mut w = vec![h; self.rho_nodes.len()];
        w[0] *= 0.5;
        *w.last_mut().unwrap() *= 0.5;
        w
    }

    /// Same spectrum with `fhat` multiplied by `m(rho)`.
    pub fn multiply(&self, m: impl Fn(f64) -> f64) -> Self {
        let fhat = self.rho_nodes.iter().zip(&self.fhat).map(|(&rho, &f)| m(rho) * f).collect();
        Self { fhat, ..self.clone() }
    }
}

/// Kernel evaluation from tabulated phases: `x = pi m / N` with
/// `sin x = table.sin[m mod 2N]`.
struct PhaseTable {
    n: usize,
    sin: Vec<f64>,
    cos: Vec<f64>,
}

impl PhaseTable {
    fn new(n: usize) -> Self {
        let (sin, cos) = (0..2 * n).map(|m| (PI * m as f64 / n as f64).sin_cos()).unzip();
        Self { n, sin, cos }
    }

    #[inline]
    fn kernel(&self, dim: usize, k: usize, j: usize) -> f64 {
        let kj = k * j;
        if kj == 0 {
            return if dim == 3 { 1.0 } else { 1.0 / 3.0 };
        }
        let x = PI * kj as f64 / self.n as f64;
        let m = kj % (2 * self.n);
        if dim == 3 {
            self.sin[m] / x
        } else if x < 0.5 {
            series::k5(x)
        } else {
            (self.sin[m] - x * self.cos[m]) / (x * x * x)
        }
    }
}

/// Forward transform on the natural frequency grid `rho_max = pi / dr`.
///
/// For `n = 3`, `f^(rho) = sqrt(2/pi) ∫ f(r) sin(rho r)/(rho r) r^2 dr`; for
/// `n = 5` the kernel is `(sin x - x cos x)/x^3`, i.e. `J_{3/2}` up to powers.
pub fn radial_fourier(p: &RadialProfile) -> Result<SpectralProfile> {
    radial_fourier_to(p, PI / p.grid.dr())
}

/// Forward transform truncated at `rho_max`, which must not exceed the
/// Nyquist frequency `pi / dr` of the source grid.
pub fn radial_fourier_to(p: &RadialProfile, rho_max: f64) -> Result<SpectralProfile> {
    check_dim(p.dim)?;
    let g = &p.grid;
    let nyquist = PI / g.dr();
    if !(rho_max > 0.0) || rho_max > nyquist * (1.0 + 1e-12) {
        return Err(config(format!("rho_max = {rho_max} exceeds the grid resolution pi/dr = {nyquist}")));
    }
    if !p.decay_certified {
        log::warn!("radial_fourier: profile is not decayed at R = {}", g.r_max());
    }
    let n = g.cells();
    let kmax = ((rho_max / nyquist) * n as f64 + 1e-9).floor() as usize;
    let table = PhaseTable::new(n);
    let dim = p.dim;
    let parity = p.samples.parity.times_power(dim as i32 - 1);
    let w = grid::quadrature_weights(g, parity);
    // fold weights, samples and r^{n-1} once
    let a: Vec<f64> = (0..g.len())
        .map(|j| w[j] * p.samples.values[j] * g.r(j).powi(dim as i32 - 1))
        .collect();
    let norm = (2.0 / PI).sqrt();
    let d_rho = PI / g.r_max();
    let mut rho_nodes = Vec::with_capacity(kmax + 1);
    let mut fhat = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let acc: f64 = a.iter().enumerate().map(|(j, aj)| aj * table.kernel(dim, k, j)).sum();
        rho_nodes.push(k as f64 * d_rho);
        fhat.push(norm * acc);
    }
    Ok(SpectralProfile { dim, rho_nodes, fhat, source: *g })
}

/// Inverse transform back onto the source grid; the kernel is symmetric so
/// this is the same quadrature in `rho`.
pub fn inverse_radial_fourier(sp: &SpectralProfile) -> Result<RadialProfile> {
    let g = sp.source;
    let n = g.cells();
    let table = PhaseTable::new(n);
    let dim = sp.dim;
    let w = sp.weights();
    let a: Vec<f64> = (0..sp.rho_nodes.len())
        .map(|k| w[k] * sp.fhat[k] * sp.rho_nodes[k].powi(dim as i32 - 1))
        .collect();
    let norm = (2.0 / PI).sqrt();
    let values = (0..g.len())
        .map(|j| norm * a.iter().enumerate().map(|(k, ak)| ak * table.kernel(dim, k, j)).sum::<f64>())
        .collect();
    RadialProfile::new(dim, g, FieldSamples::new(values, Parity::Even))
}
