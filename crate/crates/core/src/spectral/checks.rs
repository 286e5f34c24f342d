//! Scaling transforms and the dimensional norm checks built on them.

use super::cutoff::DyadicCutoff;
use super::norms::{dyadic_band, sobolev_norm};
use super::transform::{inverse_radial_fourier, radial_fourier, RadialProfile};
use crate::error::{domain, Result};
use crate::grid::{d_r, interpolate, FieldSamples, Parity, RadialGrid};

/// `r -> lambda^a f(r / lambda)` resampled on the same grid. Points whose
/// preimage falls outside the grid are set to zero, with a warning when the
/// profile had not decayed there.
pub fn scale(p: &RadialProfile, lambda: f64, a: f64) -> Result<RadialProfile> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(format!("scale factor must be positive, got {lambda}")));
    }
    if lambda == 1.0 && a == 0.0 {
        return Ok(p.clone());
    }
    let g = &p.grid;
    let amp = lambda.powf(a);
    let mut outside = false;
    let values = (0..g.len())
        .map(|j| match interpolate(&p.samples, g, g.r(j) / lambda) {
            Some(v) => amp * v,
            None => {
                outside = true;
                0.0
            }
        })
        .collect();
    if outside && !p.decay_certified {
        log::warn!("scale: lambda = {lambda} pulls undecayed samples from beyond R");
    }
    RadialProfile::new(p.dim, *g, FieldSamples::new(values, p.samples.parity))
}

/// `||v||_{H^s(R^5)} / ||u||_{H^s(R^3)}` with `v = u / r`.
///
/// `u` is sampled as an odd function of `r` (a 3D field vanishing linearly on
/// the axis); `v(0) = u'(0)`.
pub fn norm_equivalence_check(u: &RadialProfile, s: f64) -> Result<f64> {
    if u.dim != 3 {
        return Err(domain(format!("norm equivalence expects a profile on R^3, got R^{}", u.dim)));
    }
    let peak = u.samples.max_abs();
    if u.samples.values[0].abs() > 1e-12 * peak {
        return Err(domain(format!("u(0) = {} must vanish", u.samples.values[0])));
    }
    let odd = FieldSamples::new(u.samples.values.clone(), Parity::Odd);
    let slope = d_r(&odd, &u.grid)?.values[0];
    let g = &u.grid;
    let v: Vec<f64> = (0..g.len())
        .map(|j| if j == 0 { slope } else { u.samples.values[j] / g.r(j) })
        .collect();
    let u3 = RadialProfile::new(3, *g, odd)?;
    let v5 = RadialProfile::new(5, *g, FieldSamples::new(v, Parity::Even))?;
    let den = sobolev_norm(&u3, s)?;
    if den == 0.0 {
        return Err(domain("u has zero norm"));
    }
    Ok(sobolev_norm(&v5, s)? / den)
}

/// Shipped test family for the `R^3 <-> R^5` comparison: `r e^{-r^2/w^2}`,
/// `r^3 e^{-r^2/w^2}` and `r/(1 + r^2/w^2)^4`-type tails cut by a Gaussian,
/// each at four widths.
pub fn equivalence_family(grid: &RadialGrid) -> Vec<(String, RadialProfile)> {
    let mut out = Vec::new();
    for &w in &[0.5, 1.0, 2.0, 4.0] {
        let shapes: [(&str, Box<dyn Fn(f64) -> f64>); 3] = [
            ("gauss", Box::new(move |r: f64| r * (-(r / w).powi(2)).exp())),
            ("cubic", Box::new(move |r: f64| (r / w).powi(3) * (-(r / w).powi(2)).exp())),
            (
                "rational",
                Box::new(move |r: f64| r / (1.0 + (r / w).powi(2)).powi(4) * (-(r / (2.0 * w)).powi(2)).exp()),
            ),
        ];
        for (name, f) in shapes {
            let s = grid.sample(Parity::Odd, f);
            out.push((format!("{name}-w{w}"), RadialProfile::new(3, *grid, s).expect("valid family")));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceBand {
    pub s: f64,
    pub ratios: Vec<(String, f64)>,
    pub min: f64,
    pub max: f64,
}

impl EquivalenceBand {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

pub fn norm_equivalence_band(family: &[(String, RadialProfile)], s: f64) -> Result<EquivalenceBand> {
    let ratios = family
        .iter()
        .map(|(id, p)| Ok((id.clone(), norm_equivalence_check(p, s)?)))
        .collect::<Result<Vec<_>>>()?;
    let min = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let max = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(EquivalenceBand { s, ratios, min, max })
}

/// Sampled constants of `||r^{a(1/p-1/q)} S_lambda phi||_q <= C lambda^{(n-a)(1/p-1/q)} ||phi||_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicSobolevReport {
    pub dim: usize,
    pub alpha: f64,
    pub p: f64,
    pub q: f64,
    /// `(lambda, sup over the family)`.
    pub constants: Vec<(f64, f64)>,
}

impl DyadicSobolevReport {
    /// Largest over smallest sampled constant.
    pub fn variation(&self) -> f64 {
        let max = self.constants.iter().map(|c| c.1).fold(0.0, f64::max);
        let min = self.constants.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        max / min
    }

    pub fn worst(&self) -> f64 {
        self.constants.iter().map(|c| c.1).fold(0.0, f64::max)
    }
}

pub const MIN_FAMILY: usize = 20;
pub const MIN_LAMBDAS: usize = 5;

pub fn radial_dyadic_sobolev_check(
    family: &[RadialProfile],
    dim: usize,
    alpha: f64,
    p: f64,
    q: f64,
    lambdas: &[f64],
    cutoff: &DyadicCutoff,
) -> Result<DyadicSobolevReport> {
    if !(0.0..=(dim as f64 - 1.0)).contains(&alpha) {
        return Err(domain(format!("alpha = {alpha} outside [0, n-1]")));
    }
    if !(p >= 2.0 && q >= p) {
        return Err(domain(format!("need 2 <= p <= q, got p = {p}, q = {q}")));
    }
    if family.len() < MIN_FAMILY || lambdas.len() < MIN_LAMBDAS {
        return Err(domain(format!(
            "need >= {MIN_FAMILY} profiles and >= {MIN_LAMBDAS} frequencies, got {} and {}",
            family.len(),
            lambdas.len()
        )));
    }
    if let Some(bad) = family.iter().find(|f| f.dim != dim) {
        return Err(domain(format!("profile on R^{} in an R^{dim} family", bad.dim)));
    }
    let gap = 1.0 / p - if q.is_infinite() { 0.0 } else { 1.0 / q };
    let beta = alpha * gap;
    let mut constants: Vec<(f64, f64)> = lambdas.iter().map(|&l| (l, 0.0)).collect();
    for phi in family {
        for &l in lambdas {
            if !dyadic_band(phi).iter().any(|b| (b / l - 1.0).abs() < 1e-12) {
                return Err(domain(format!("lambda = {l} is not a resolvable dyadic frequency")));
            }
        }
        let sp = radial_fourier(phi)?;
        let rhs_norm = phi.lp_norm(p);
        for (l, worst) in constants.iter_mut() {
            let piece = inverse_radial_fourier(&sp.multiply(|rho| cutoff.chi(rho / *l)))?;
            let lhs = piece.weighted_lp_norm(q, beta);
            let c = lhs / (l.powf((dim as f64 - alpha) * gap) * rhs_norm);
            *worst = worst.max(c);
        }
    }
    Ok(DyadicSobolevReport { dim, alpha, p, q, constants })
}

/// 24 profiles: Gaussian, Gaussian times `(1 + r^2/w^2)` and a
/// sinc-modulated Gaussian, each at eight geometric widths `2^{1-k}`.
pub fn dyadic_sobolev_family(dim: usize, grid: &RadialGrid) -> Result<Vec<RadialProfile>> {
    let mut out = Vec::with_capacity(24);
    for k in 0..8 {
        let w = 2f64.powi(1 - k);
        out.push(RadialProfile::from_fn(dim, *grid, |r| (-(r / w).powi(2) / 2.0).exp())?);
        out.push(RadialProfile::from_fn(dim, *grid, |r| {
            (1.0 + (r / w).powi(2)) * (-(r / w).powi(2) / 2.0).exp()
        })?);
        out.push(RadialProfile::from_fn(dim, *grid, |r| {
            let x = 3.0 * r / w;
            let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
            sinc * (-(r / w).powi(2) / 8.0).exp()
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_scale_is_identity() {
        let g = RadialGrid::new(10.0, 128).unwrap();
        let p = RadialProfile::from_fn(3, g, |r| (-r * r).exp()).unwrap();
        assert_eq!(scale(&p, 1.0, 0.0).unwrap(), p);
        let same = scale(&p, 1.0, 1.0).unwrap();
        assert!(same.values().iter().zip(p.values()).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(scale(&p, 0.0, 1.0).is_err());
    }

    #[test]
    fn equivalence_at_zero_is_the_sphere_ratio() {
        let g = RadialGrid::new(30.0, 2048).unwrap();
        let fam = equivalence_family(&g);
        assert!(fam.len() >= 10);
        let want = (2.0 * std::f64::consts::PI / 3.0).sqrt();
        for (id, p) in &fam {
            let r = norm_equivalence_check(p, 0.0).unwrap();
            assert!((r / want - 1.0).abs() < 1e-6, "{id}: {r}");
        }
    }

    #[test]
    fn equivalence_rejects_nonvanishing_axis() {
        let g = RadialGrid::new(10.0, 128).unwrap();
        let p = RadialProfile::from_fn(3, g, |r| (-r * r).exp()).unwrap();
        assert!(matches!(norm_equivalence_check(&p, 1.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn equivalence_ratio_is_dilation_invariant() {
        // ||v||_{H^s(R^5)} and ||u||_{H^s(R^3)} pick up the same power of the dilation
        let g = RadialGrid::new(40.0, 4096).unwrap();
        let ratio = |w: f64| {
            let s = g.sample(Parity::Odd, |r| r * (-(r / w).powi(2)).exp());
            norm_equivalence_check(&RadialProfile::new(3, g, s).unwrap(), 1.0).unwrap()
        };
        let base = ratio(1.0);
        for w in [0.5, 2.0] {
            assert!((ratio(w) / base - 1.0).abs() < 1e-3, "w={w}");
        }
    }

    #[test]
    fn check_rejects_bad_parameters() {
        let g = RadialGrid::new(10.0, 128).unwrap();
        let fam = dyadic_sobolev_family(3, &g).unwrap();
        let c = DyadicCutoff::default();
        let l = [1.0, 2.0, 4.0, 8.0, 16.0];
        assert!(radial_dyadic_sobolev_check(&fam, 3, 2.5, 2.0, 4.0, &l, &c).is_err());
        assert!(radial_dyadic_sobolev_check(&fam, 3, 1.0, 4.0, 2.0, &l, &c).is_err());
        assert!(radial_dyadic_sobolev_check(&fam[..10], 3, 1.0, 2.0, 4.0, &l, &c).is_err());
        assert!(radial_dyadic_sobolev_check(&fam, 3, 1.0, 2.0, 4.0, &l[..3], &c).is_err());
        assert!(radial_dyadic_sobolev_check(&fam, 5, 1.0, 2.0, 4.0, &l, &c).is_err());
    }

    #[test]
    fn equal_exponents_give_a_multiplier_bound() {
        let g = RadialGrid::new(20.0, 1024).unwrap();
        let fam = dyadic_sobolev_family(5, &g).unwrap();
        let rep = radial_dyadic_sobolev_check(&fam, 5, 0.0, 2.0, 2.0, &[1.0, 2.0, 4.0, 8.0, 16.0], &DyadicCutoff::default())
            .unwrap();
        // chi <= 1 so the L^2 piece never exceeds the profile
        assert!(rep.worst() <= 1.0 + 1e-9);
    }
}
