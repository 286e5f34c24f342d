//! Closed-form solutions used as oracles.

use crate::error::{domain, Result};

/// Value and analytic derivatives of `u = 2 arctan(r / t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurokSpergel {
    pub u: f64,
    pub u_t: f64,
    pub u_r: f64,
    pub u_tt: f64,
    pub u_rr: f64,
}

/// The self-similar wave-map blow-up solution `u(t, r) = 2 arctan(r / t)`,
/// singular at `t = 0`.
pub fn turok_spergel(t: f64, r: f64) -> Result<TurokSpergel> {
    if t == 0.0 || !t.is_finite() || !r.is_finite() {
        return Err(domain(format!("Turok-Spergel solution undefined at t = {t}, r = {r}")));
    }
    let d = t * t + r * r;
    let d2 = d * d;
    Ok(TurokSpergel {
        u: 2.0 * (r / t).atan(),
        u_t: -2.0 * r / d,
        u_r: 2.0 * t / d,
        u_tt: 4.0 * r * t / d2,
        u_rr: -4.0 * r * t / d2,
    })
}

/// A smooth scalar profile `F(s)` with derivatives of any order.
pub trait WaveProfile {
    /// Fills `out[k]` with `F^{(k)}(s)` for `k < out.len()`.
    fn derivatives(&self, s: f64, out: &mut [f64]);

    /// Length scale of the profile; sets the near-axis series radius.
    fn scale(&self) -> f64;
}

/// `F(s) = amplitude * exp(-((s - center) / width)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

impl WaveProfile for GaussianProfile {
    fn derivatives(&self, s: f64, out: &mut [f64]) {
        // d^n/dx^n e^{-x^2} = (-1)^n H_n(x) e^{-x^2}
        let x = (s - self.center) / self.width;
        let g = self.amplitude * (-x * x).exp();
        let inv_w = -1.0 / self.width;
        let (mut h_prev, mut h) = (0.0, 1.0);
        let mut scale = 1.0;
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = scale * h * g;
            let next = 2.0 * x * h - 2.0 * n as f64 * h_prev;
            h_prev = h;
            h = next;
            scale *= inv_w;
        }
    }

    fn scale(&self) -> f64 {
        self.width
    }
}

/// `v` and its first two time derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeWaveSample {
    pub v: f64,
    pub v_t: f64,
    pub v_tt: f64,
}

const SERIES_TERMS: usize = 14;

/// Exact radial solution of `v_tt = v_rr + (4/r) v_r` built from
/// `w = (F(t + r) - F(t - r)) / r` (a 3D radial wave) as `v = w_r / r`.
pub fn exact_free_wave_5d(profile: &impl WaveProfile, t: f64, r: f64) -> f64 {
    exact_free_wave_5d_full(profile, t, r).v
}

pub fn exact_free_wave_5d_full(profile: &impl WaveProfile, t: f64, r: f64) -> FreeWaveSample {
    let r = r.abs();
    if r < 0.25 * profile.scale() {
        axis_series(profile, t, r)
    } else {
        closed_form(profile, t, r)
    }
}

/// `v^{(m)} = 2 sum_{k odd >= 3} (k-1)/k! F^{(k+m)}(t) r^{k-3}`
fn axis_series(profile: &impl WaveProfile, t: f64, r: f64) -> FreeWaveSample {
    let mut out = [0.0; 3];
    let mut d = [0.0; 2 * SERIES_TERMS + 6];
    profile.derivatives(t, &mut d);
    let r2 = r * r;
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        let mut rk = 1.0;
        let mut fact = 6.0; // 3!
        for j in 0..SERIES_TERMS {
            let k = 3 + 2 * j;
            acc += (k as f64 - 1.0) / fact * d[k + m] * rk;
            rk *= r2;
            fact *= ((k + 1) * (k + 2)) as f64;
        }
        *slot = 2.0 * acc;
    }
    FreeWaveSample { v: out[0], v_t: out[1], v_tt: out[2] }
}

fn closed_form(profile: &impl WaveProfile, t: f64, r: f64) -> FreeWaveSample {
    let mut out = [0.0; 3];
    let mut dp = [0.0; 4];
    let mut dm = [0.0; 4];
    profile.derivatives(t + r, &mut dp);
    profile.derivatives(t - r, &mut dm);
    let (r2, r3) = (r * r, r * r * r);
    for (m, slot) in out.iter_mut().enumerate() {
        let g = dp[m] - dm[m];
        let g_r = dp[m + 1] + dm[m + 1];
        *slot = g_r / r2 - g / r3;
    }
    FreeWaveSample { v: out[0], v_t: out[1], v_tt: out[2] }
}
