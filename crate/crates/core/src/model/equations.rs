//! Right-hand sides and energy densities of the radial field equations.
//!
//! Two formulations are provided. The angular form evolves `u(t, r)` on
//! `R^{3+1}`; the semilinear form evolves `v = u / r`, an even function on
//! `R^{5+1}` whose linear part is the radial 5D wave operator. In the
//! `v`-form only the nonlinear acceleration is returned here; the discrete
//! Laplacian belongs to the grid.

use std::fmt;
use std::str::FromStr;

use super::coefficients::{skyrme_denominator, tilde_h_unchecked, CoeffId};
use super::series::{an_kernel, sinc};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    WaveMap,
    Skyrme,
    AdkinsNappi,
    /// Scale-invariant small-`u` approximation of the Skyrme equation.
    SkyrmeApprox,
    /// Scale-invariant small-`u` approximation of the Adkins-Nappi equation.
    AdkinsNappiApprox,
    FreeWave5D,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::WaveMap,
        ModelKind::Skyrme,
        ModelKind::AdkinsNappi,
        ModelKind::SkyrmeApprox,
        ModelKind::AdkinsNappiApprox,
        ModelKind::FreeWave5D,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::WaveMap => "wave-map",
            ModelKind::Skyrme => "skyrme",
            ModelKind::AdkinsNappi => "adkins-nappi",
            ModelKind::SkyrmeApprox => "skyrme-approx",
            ModelKind::AdkinsNappiApprox => "adkins-nappi-approx",
            ModelKind::FreeWave5D => "free-wave-5d",
        }
    }

    pub fn uses_alpha(self) -> bool {
        matches!(self, ModelKind::Skyrme | ModelKind::SkyrmeApprox)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown model kind '{s}'")))
    }
}

/// Which equation is evolved. `alpha` is the Skyrme length scale and is
/// zero for every kind that ignores it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub alpha: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, alpha: f64) -> Result<Self> {
        if kind.uses_alpha() {
            if !(alpha.is_finite() && alpha > 0.0) {
                return Err(domain(format!("{kind} requires alpha > 0, got {alpha}")));
            }
            Ok(Self { kind, alpha })
        } else {
            Ok(Self { kind, alpha: 0.0 })
        }
    }

    pub fn wave_map() -> Self {
        Self { kind: ModelKind::WaveMap, alpha: 0.0 }
    }

    pub fn skyrme(alpha: f64) -> Result<Self> {
        Self::new(ModelKind::Skyrme, alpha)
    }

    pub fn adkins_nappi() -> Self {
        Self { kind: ModelKind::AdkinsNappi, alpha: 0.0 }
    }

    pub fn free_wave() -> Self {
        Self { kind: ModelKind::FreeWave5D, alpha: 0.0 }
    }

    pub fn is_linear(&self) -> bool {
        self.kind == ModelKind::FreeWave5D
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.uses_alpha() {
            write!(f, "{} alpha={}", self.kind, self.alpha)
        } else {
            write!(f, "{}", self.kind)
        }
    }
}

/// Pointwise data of the `v`-field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointData {
    pub r: f64,
    pub v: f64,
    pub v_r: f64,
    pub v_t: f64,
}

impl PointData {
    pub fn new(r: f64, v: f64, v_r: f64, v_t: f64) -> Self {
        Self { r, v, v_r, v_t }
    }

    /// The angular field `u = r v`.
    #[inline]
    pub fn u(&self) -> f64 {
        self.r * self.v
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.v.is_finite() && self.v_r.is_finite() && self.v_t.is_finite()
    }
}

/// `Q(v, v) = v_t^2 - v_r^2`.
#[inline]
pub fn null_form(v_t: f64, v_r: f64) -> f64 {
    v_t * v_t - v_r * v_r
}

/// Nonlinear part of `v_tt`, i.e. `v_tt = Δ₅ v + rhs_v`.
///
/// A non-finite result is returned as-is; the solver treats it as a blow-up
/// signal.
pub fn rhs_v(model: &ModelSpec, p: &PointData) -> f64 {
    let PointData { r, v, v_r, v_t } = *p;
    let u = r * v;
    let v3 = v * v * v;
    match model.kind {
        ModelKind::FreeWave5D => 0.0,
        ModelKind::WaveMap => -tilde_h_unchecked(CoeffId::H1, u, 0.0) * v3,
        ModelKind::Skyrme => {
            let a = model.alpha;
            let d = skyrme_denominator(r, v, a);
            let n = tilde_h_unchecked(CoeffId::H1, u, a) * v3
                + tilde_h_unchecked(CoeffId::H2, u, a) * v3 * v * v
                + tilde_h_unchecked(CoeffId::H3, u, a) * v3 * v_r
                + tilde_h_unchecked(CoeffId::H4, u, a) * v * null_form(v_t, v_r);
            -n / d
        }
        ModelKind::AdkinsNappi => {
            -(tilde_h_unchecked(CoeffId::H5, u, 0.0) * v3
                + tilde_h_unchecked(CoeffId::H6, u, 0.0) * v3 * v * v)
        }
        ModelKind::SkyrmeApprox => {
            // sin u -> u in the Skyrme v-form: h1 = h2 = h3 = 0, h~4 = 2 alpha^2
            let a2 = model.alpha * model.alpha;
            -2.0 * a2 * v * null_form(v_t, v_r) / (1.0 + 2.0 * a2 * v * v)
        }
        ModelKind::AdkinsNappiApprox => -(v3 * v * v),
    }
}

/// `u_tt` of the angular equation, solved explicitly. Requires `r > 0`.
pub fn rhs_u(model: &ModelSpec, r: f64, u: f64, u_r: f64, u_t: f64, u_rr: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("angular form needs r > 0 (got r = {r}); use the v-form on the axis")));
    }
    let r2 = r * r;
    let (s, c) = u.sin_cos();
    let sin2u = 2.0 * s * c;
    let a2 = model.alpha * model.alpha;
    let out = match model.kind {
        ModelKind::WaveMap | ModelKind::Skyrme => {
            let d = 1.0 + 2.0 * a2 * s * s / r2;
            let bracket = 1.0 + a2 * (null_form(u_t, u_r) + s * s / r2);
            u_rr + (2.0 * u_r / r - sin2u / r2 * bracket) / d
        }
        ModelKind::AdkinsNappi => {
            u_rr + 2.0 * u_r / r - sin2u / r2 - (u - s * c) * (1.0 - (2.0 * u).cos()) / (r2 * r2)
        }
        ModelKind::SkyrmeApprox => {
            let d = 1.0 + 2.0 * a2 * u * u / r2;
            let bracket = 1.0 + a2 * (null_form(u_t, u_r) + u * u / r2);
            u_rr + (2.0 * u_r / r - 2.0 * u / r2 * bracket) / d
        }
        ModelKind::AdkinsNappiApprox => u_rr + 2.0 * u_r / r - 2.0 * u / r2 - u.powi(5) / (r2 * r2),
        ModelKind::FreeWave5D => u_rr + 2.0 * u_r / r - 2.0 * u / r2,
    };
    Ok(out)
}

/// Integrand with all singular ratios supplied explicitly:
/// `v = u/r`, `s = sin(u)/r`, `k = u_t^2 + u_r^2`.
fn energy_kernel(model: &ModelSpec, r: f64, u: f64, v: f64, s: f64, k: f64) -> f64 {
    let r2 = r * r;
    let a2 = model.alpha * model.alpha;
    let sin2 = s * s * r2;
    match model.kind {
        ModelKind::WaveMap => 0.5 * r2 * k + sin2,
        ModelKind::Skyrme => 0.5 * (r2 + 2.0 * a2 * sin2) * k + sin2 + 0.5 * a2 * sin2 * s * s,
        ModelKind::AdkinsNappi => {
            let w = v * an_kernel(u);
            0.5 * r2 * k + sin2 + 0.5 * w * w
        }
        ModelKind::SkyrmeApprox => {
            let u2 = u * u;
            0.5 * (r2 + 2.0 * a2 * u2) * k + u2 + 0.5 * a2 * u2 * v * v
        }
        ModelKind::AdkinsNappiApprox => {
            let u2 = u * u;
            0.5 * r2 * k + u2 + u2 * v.powi(4) / 6.0
        }
        ModelKind::FreeWave5D => 0.5 * r2 * k + u * u,
    }
}

/// Energy integrand times `r^2` so the total energy is `∫₀^∞ e dr`.
/// At `r = 0` the density vanishes for any field with `u(t, 0) = 0`.
pub fn energy_density(model: &ModelSpec, r: f64, u: f64, u_r: f64, u_t: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let v = u / r;
    energy_kernel(model, r, u, v, u.sin() / r, u_t * u_t + u_r * u_r)
}

/// Same density expressed through the `v`-field; regular on the axis.
pub fn energy_density_v(model: &ModelSpec, p: &PointData) -> f64 {
    let u = p.u();
    let u_t = p.r * p.v_t;
    let u_r = p.v + p.r * p.v_r;
    energy_kernel(model, p.r, u, p.v, p.v * sinc(u), u_t * u_t + u_r * u_r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn skyrme1() -> ModelSpec {
        ModelSpec::skyrme(1.0).unwrap()
    }

    #[test]
    fn model_spec_validation() {
        assert!(ModelSpec::skyrme(0.0).is_err());
        assert!(ModelSpec::new(ModelKind::SkyrmeApprox, -1.0).is_err());
        assert_eq!(ModelSpec::new(ModelKind::AdkinsNappi, 5.0).unwrap().alpha, 0.0);
        for k in ModelKind::ALL {
            assert_eq!(k.name().parse::<ModelKind>().unwrap(), k);
        }
        assert!("sigma".parse::<ModelKind>().is_err());
    }

    #[test]
    fn rhs_v_trivial_cases() {
        let an = ModelSpec::adkins_nappi();
        assert_eq!(rhs_v(&an, &PointData::new(0.7, 0.0, 0.3, -1.0)), 0.0);
        let free = ModelSpec::free_wave();
        assert_eq!(rhs_v(&free, &PointData::new(0.7, 3.0, 0.3, -1.0)), 0.0);
        // exact v-form of the approximate Adkins-Nappi equation is v_tt = Δv - v^5
        let approx = ModelSpec::new(ModelKind::AdkinsNappiApprox, 0.0).unwrap();
        assert_eq!(rhs_v(&approx, &PointData::new(1.0, 1.0, 0.0, 0.0)), -1.0);
    }

    #[test]
    fn skyrme_with_zero_alpha_terms_is_wave_map() {
        let sk0 = ModelSpec { kind: ModelKind::Skyrme, alpha: 0.0 };
        let wm = ModelSpec::wave_map();
        for &(r, v, vr, vt) in &[(0.3, 1.2, -0.4, 0.8), (2.0, 0.9, 0.1, -0.2), (0.0, 2.0, 0.0, 1.0)] {
            let p = PointData::new(r, v, vr, vt);
            assert_eq!(rhs_v(&sk0, &p), rhs_v(&wm, &p));
            if r > 0.0 {
                let u = r * v;
                let a = rhs_u(&sk0, r, u, v + r * vr, r * vt, 0.4).unwrap();
                let b = rhs_u(&wm, r, u, v + r * vr, r * vt, 0.4).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rhs_u_requires_positive_radius() {
        assert!(rhs_u(&ModelSpec::wave_map(), 0.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert_eq!(rhs_u(&ModelSpec::adkins_nappi(), 1.0, 0.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
    }

    /// The v-form and u-form describe the same dynamics: for u = r v,
    /// u_tt = r v_tt with v_tt = v_rr + 4 v_r / r + rhs_v.
    #[test]
    fn v_form_agrees_with_u_form() {
        let models = [
            ModelSpec::wave_map(),
            skyrme1(),
            ModelSpec::skyrme(0.6).unwrap(),
            ModelSpec::adkins_nappi(),
            ModelSpec::new(ModelKind::SkyrmeApprox, 0.8).unwrap(),
            ModelSpec::new(ModelKind::AdkinsNappiApprox, 0.0).unwrap(),
            ModelSpec::free_wave(),
        ];
        let pts = [(0.5, 0.8, -0.3, 0.4, 1.1), (1.7, -0.6, 0.2, -0.9, -0.4), (3.0, 1.5, 0.7, 0.1, 0.3)];
        for m in &models {
            for &(r, v, vr, vt, vrr) in &pts {
                let vtt = vrr + 4.0 * vr / r + rhs_v(m, &PointData::new(r, v, vr, vt));
                let u = r * v;
                let u_r = v + r * vr;
                let u_rr = r * vrr + 2.0 * vr;
                let utt = rhs_u(m, r, u, u_r, r * vt, u_rr).unwrap();
                assert!((utt - r * vtt).abs() < 1e-12 * (1.0 + utt.abs()), "{m}: {utt} vs {}", r * vtt);
            }
        }
    }

    #[test]
    fn energy_examples() {
        for k in ModelKind::ALL {
            let m = ModelSpec::new(k, 1.0).unwrap();
            assert_eq!(energy_density(&m, 1.3, 0.0, 0.0, 0.0), 0.0);
        }
        let e = energy_density(&ModelSpec::adkins_nappi(), 1.0, PI, 0.0, 0.0);
        assert!((e - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn energy_v_form_matches_u_form() {
        let m = skyrme1();
        let p = PointData::new(0.8, 0.5, -0.2, 0.3);
        let a = energy_density_v(&m, &p);
        let b = energy_density(&m, 0.8, 0.4, 0.5 + 0.8 * -0.2, 0.8 * 0.3);
        assert!((a - b).abs() < 1e-15);
        assert_eq!(energy_density_v(&m, &PointData::new(0.0, 3.0, 0.0, 1.0)), 0.0);
    }

    #[test]
    fn null_form_examples() {
        assert_eq!(null_form(1.0, 1.0), 0.0);
        assert_eq!(null_form(2.0, 0.0), 4.0);
    }

    /// `Q(v, v) + box(v^2/2) - v box v = 0` with `box = -d_tt + d_rr + (4/r) d_r`;
    /// evaluated by central differences the residual is O(h^2).
    #[test]
    fn null_form_identity_residual_is_second_order() {
        let v = |t: f64, r: f64| (-(r - t).powi(2)).exp() * (1.0 + 0.3 * (2.0 * t).cos()) + 0.2 * (r * t).sin();
        let residual = |h: f64| {
            let mut worst = 0.0f64;
            for i in 0..20 {
                let t = 0.1 + 0.07 * i as f64;
                let r = 0.5 + 0.12 * i as f64;
                let wave = |f: &dyn Fn(f64, f64) -> f64| {
                    let tt = (f(t + h, r) - 2.0 * f(t, r) + f(t - h, r)) / (h * h);
                    let rr = (f(t, r + h) - 2.0 * f(t, r) + f(t, r - h)) / (h * h);
                    let dr = (f(t, r + h) - f(t, r - h)) / (2.0 * h);
                    -tt + rr + 4.0 / r * dr
                };
                let v_t = (v(t + h, r) - v(t - h, r)) / (2.0 * h);
                let v_r = (v(t, r + h) - v(t, r - h)) / (2.0 * h);
                let half_sq = |t: f64, r: f64| 0.5 * v(t, r).powi(2);
                let res = null_form(v_t, v_r) + wave(&half_sq) - v(t, r) * wave(&v);
                worst = worst.max(res.abs());
            }
            worst
        };
        let (e1, e2, e3) = (residual(1e-2), residual(5e-3), residual(2.5e-3));
        assert!(e1 / e2 > 3.5 && e2 / e3 > 3.5, "{e1:e} {e2:e} {e3:e}");
        assert!(e3 < 1e-4);
    }

    proptest! {
        #[test]
        fn energy_nonnegative(
            r in 0.0f64..20.0, v in -10.0f64..10.0, vr in -10.0f64..10.0, vt in -10.0f64..10.0,
            a in 0.01f64..3.0,
        ) {
            for k in ModelKind::ALL {
                let m = ModelSpec::new(k, a).unwrap();
                let e = energy_density_v(&m, &PointData::new(r, v, vr, vt));
                prop_assert!(e >= 0.0 && e.is_finite());
            }
        }

        /// Skyrme minus its scale-invariant approximation, after accounting for the
        /// lowest-order terms that the approximation drops, is O(u^2).
        #[test]
        fn skyrme_small_u_consistency(
            r in 0.01f64..2.0, v in -0.5f64..0.5, vr in -1.0f64..1.0, vt in -1.0f64..1.0,
        ) {
            let m = skyrme1();
            let approx = ModelSpec::new(ModelKind::SkyrmeApprox, 1.0).unwrap();
            let v = v * 1e-3 / r.max(1.0);
            let p = PointData::new(r, v, vr, vt);
            let u = p.u();
            prop_assume!(u.abs() <= 1e-3);
            let d = skyrme_denominator(r, v, 1.0);
            // leading Taylor terms of h~1, h~2 and the odd h~3 ~ (4/3) u
            let dropped = -((-4.0 / 3.0) * v.powi(3)
                + (-2.0 / 3.0) * v.powi(5)
                + (4.0 / 3.0) * u * v.powi(3) * vr)
                / d;
            let diff = rhs_v(&m, &p) - rhs_v(&approx, &p) - dropped;
            let scale = v.abs() * (v * v * (1.0 + v * v + vr.abs()) + vt * vt + vr * vr);
            prop_assert!(diff.abs() <= 10.0 * u * u * scale + 1e-300, "diff {diff} u {u} scale {scale}");
        }
    }
}
