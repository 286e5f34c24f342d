//! Homogeneous Sobolev and Besov norms of radial profiles.

use super::cutoff::DyadicCutoff;
use super::zeta::zeta;
use super::transform::{inverse_radial_fourier, radial_fourier, sphere_area, RadialProfile, SpectralProfile};
use crate::error::{domain, Result};
use std::f64::consts::PI;

fn check_sobolev_index(dim: usize, s: f64) -> Result<()> {
    if !(s > -(dim as f64) / 2.0) {
        return Err(domain(format!("Sobolev index s = {s} must exceed -n/2 = {}", -(dim as f64) / 2.0)));
    }
    Ok(())
}

/// `|S^{n-1}| ∫ rho^{2s+n-1} |f^|^2 d rho` over a frequency window.
fn spectral_mass(sp: &SpectralProfile, s: f64, keep: impl Fn(f64) -> bool) -> f64 {
    let w = sp.weights();
    let m = 2.0 * s + sp.dim as f64 - 1.0;
    let total: f64 = (0..w.len())
        .filter(|&k| keep(sp.rho_nodes[k]))
        .map(|k| {
            let rho = sp.rho_nodes[k];
            let pw = if rho == 0.0 {
                // integrable singularity (m < 0) or removable; the node carries no mass
                if m == 0.0 { 1.0 } else { 0.0 }
            } else {
                rho.powf(m)
            };
            w[k] * pw * sp.fhat[k] * sp.fhat[k]
        })
        .sum();
    sphere_area(sp.dim) * total
}

/// `||f||_{H^s(R^n)}` from an existing transform.
///
/// The integrand `rho^m |f^|^2`, `m = 2s + n - 1`, is not smooth at the
/// origin for fractional `m`; the generalized Euler-Maclaurin (Navot) terms
/// `zeta(-m-j) g^{(j)}(0) h^{m+j+1} / j!` for `j = 0, 2, 4` are removed.
pub fn sobolev_norm_spectral(sp: &SpectralProfile, s: f64) -> Result<f64> {
    check_sobolev_index(sp.dim, s)?;
    let mut total = spectral_mass(sp, s, |_| true);
    let m = 2.0 * s + sp.dim as f64 - 1.0;
    if m != 0.0 && sp.fhat.len() >= 3 {
        let h = sp.d_rho();
        let g: Vec<f64> = sp.fhat[..3].iter().map(|f| f * f).collect();
        // even extension of g about rho = 0
        let g2 = (32.0 * g[1] - 2.0 * g[2] - 30.0 * g[0]) / (12.0 * h * h);
        let g4 = (2.0 * g[2] - 8.0 * g[1] + 6.0 * g[0]) / h.powi(4);
        let navot = zeta(-m) * g[0] * h.powf(m + 1.0)
            + zeta(-m - 2.0) * g2 / 2.0 * h.powf(m + 3.0)
            + zeta(-m - 4.0) * g4 / 24.0 * h.powf(m + 5.0);
        total -= sphere_area(sp.dim) * navot;
    }
    Ok(total.max(0.0).sqrt())
}

/// Homogeneous Sobolev norm `|| |xi|^s f^ ||_{L^2}`.
pub fn sobolev_norm(p: &RadialProfile, s: f64) -> Result<f64> {
    check_sobolev_index(p.dim, s)?;
    if !p.decay_certified {
        log::warn!("sobolev_norm: profile is not decayed; the value is a truncation");
    }
    sobolev_norm_spectral(&radial_fourier(p)?, s)
}

/// Dyadic frequencies `2^j` resolvable on the profile's grid,
/// `2 pi / R <= lambda <= pi / dr`.
pub fn dyadic_band(p: &RadialProfile) -> Vec<f64> {
    let lo = 2.0 * PI / p.grid.r_max();
    let hi = PI / p.grid.dr();
    let j0 = lo.log2().ceil() as i32;
    let j1 = hi.log2().floor() as i32;
    (j0..=j1).map(|j| 2f64.powi(j)).collect()
}

fn check_band(p: &RadialProfile, lambda: f64) -> Result<()> {
    let lo = 2.0 * PI / p.grid.r_max();
    let hi = PI / p.grid.dr();
    if !(lambda >= lo * (1.0 - 1e-12) && lambda <= hi * (1.0 + 1e-12)) {
        return Err(domain(format!("lambda = {lambda} outside the resolvable band [{lo}, {hi}]")));
    }
    Ok(())
}

fn piece_of(sp: &SpectralProfile, lambda: f64, cutoff: &DyadicCutoff) -> Result<RadialProfile> {
    inverse_radial_fourier(&sp.multiply(|rho| cutoff.chi(rho / lambda)))
}

/// Littlewood-Paley piece `S_lambda f = F^{-1} chi(rho / lambda) F f`.
pub fn dyadic_piece(p: &RadialProfile, lambda: f64, cutoff: &DyadicCutoff) -> Result<RadialProfile> {
    check_band(p, lambda)?;
    piece_of(&radial_fourier(p)?, lambda, cutoff)
}

/// All pieces over the resolvable band, in increasing `lambda`.
pub fn dyadic_pieces(p: &RadialProfile, cutoff: &DyadicCutoff) -> Result<Vec<(f64, RadialProfile)>> {
    let sp = radial_fourier(p)?;
    dyadic_band(p).into_iter().map(|l| Ok((l, piece_of(&sp, l, cutoff)?))).collect()
}

/// A Besov norm with its band-truncation estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct BesovNorm {
    pub value: f64,
    /// `H^s` mass of the spectrum outside the frequencies the band fully
    /// covers. It bounds the truncation exactly for `p = 2` and indicates it
    /// otherwise.
    pub truncation_bound: f64,
    pub lambdas: Vec<f64>,
}

fn check_exponent(name: &str, x: f64) -> Result<()> {
    if !(x >= 1.0) {
        return Err(domain(format!("{name} = {x} must lie in [1, inf]")));
    }
    Ok(())
}

fn lq_sum(terms: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        terms.iter().copied().fold(0.0, f64::max)
    } else {
        terms.iter().map(|t| t.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

fn besov_impl(p: &RadialProfile, beta: f64, s: f64, p_exp: f64, q_exp: f64, cutoff: &DyadicCutoff) -> Result<BesovNorm> {
    check_exponent("p", p_exp)?;
    check_exponent("q", q_exp)?;
    let sp = radial_fourier(p)?;
    let lambdas = dyadic_band(p);
    let terms = lambdas
        .iter()
        .map(|&l| Ok(l.powf(s) * piece_of(&sp, l, cutoff)?.weighted_lp_norm(p_exp, beta)))
        .collect::<Result<Vec<f64>>>()?;
    // chi sums to one on [lambda_min, lambda_max] and only partially outside
    let (lo, hi) = (lambdas.first().copied().unwrap_or(f64::INFINITY), lambdas.last().copied().unwrap_or(0.0));
    let truncation_bound = spectral_mass(&sp, s.max(-(p.dim as f64) / 2.0 + 1e-9), |rho| rho < lo || rho > hi)
        .max(0.0)
        .sqrt();
    Ok(BesovNorm { value: lq_sum(&terms, q_exp), truncation_bound, lambdas })
}

/// `||f||_{B^s_{p,q}} = || lambda^s ||S_lambda f||_{L^p} ||_{l^q}` over the
/// resolvable dyadic band.
pub fn besov_norm(p: &RadialProfile, s: f64, p_exp: f64, q_exp: f64, cutoff: &DyadicCutoff) -> Result<BesovNorm> {
    besov_impl(p, 0.0, s, p_exp, q_exp, cutoff)
}

/// Experimental: the same dyadic recipe with `r^beta` applied to every piece
/// before the `L^p` quadrature.
pub fn weighted_besov_norm(
    p: &RadialProfile,
    beta: f64,
    s: f64,
    p_exp: f64,
    q_exp: f64,
    cutoff: &DyadicCutoff,
) -> Result<BesovNorm> {
    besov_impl(p, beta, s, p_exp, q_exp, cutoff)
}

/// Frequency multiplier `sum_lambda lambda^{2s} chi(rho/lambda)^2` through
/// which the discrete `B^s_{2,2}` norm sees the spectrum.
pub fn besov22_multiplier(rho: f64, s: f64, lambdas: &[f64], cutoff: &DyadicCutoff) -> f64 {
    lambdas.iter().map(|&l| l.powf(2.0 * s) * cutoff.chi(rho / l).powi(2)).sum()
}

/// Plancherel form of the `B^s_{2,2}` norm: `|S^{n-1}| ∫ m_s(rho) |f^|^2 rho^{n-1}`.
pub fn besov22_plancherel(p: &RadialProfile, s: f64, cutoff: &DyadicCutoff) -> Result<f64> {
    let sp = radial_fourier(p)?;
    let lambdas = dyadic_band(p);
    let w = sp.weights();
    let total: f64 = (0..w.len())
        .map(|k| {
            let rho = sp.rho_nodes[k];
            w[k] * besov22_multiplier(rho, s, &lambdas, cutoff) * sp.fhat[k].powi(2) * rho.powi(p.dim as i32 - 1)
        })
        .sum();
    Ok((sphere_area(p.dim) * total).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use statrs::function::gamma::gamma;

    fn gaussian(dim: usize) -> RadialProfile {
        RadialProfile::from_fn(dim, RadialGrid::new(20.0, 1024).unwrap(), |r| (-r * r / 2.0).exp()).unwrap()
    }

    #[test]
    fn gaussian_sobolev_matches_gamma_integral() {
        for dim in [3, 5] {
            let p = gaussian(dim);
            for s in [0.0, 1.0, 1.5, 2.0, 2.5, -1.0] {
                let exact = (sphere_area(dim) * gamma(s + dim as f64 / 2.0) / 2.0).sqrt();
                let got = sobolev_norm(&p, s).unwrap();
                assert!((got / exact - 1.0).abs() < 1e-6, "n={dim} s={s}: {got} vs {exact}");
            }
        }
        let l2 = sobolev_norm(&gaussian(3), 0.0).unwrap();
        assert!((l2 - PI.powf(0.75)).abs() < 1e-10);
    }

    #[test]
    fn sobolev_domain() {
        assert!(matches!(sobolev_norm(&gaussian(3), -1.5), Err(crate::Error::Domain(_))));
        assert!(sobolev_norm(&gaussian(5), -2.4).is_ok());
        let zero = RadialProfile::from_fn(5, RadialGrid::new(5.0, 64).unwrap(), |_| 0.0).unwrap();
        assert_eq!(sobolev_norm(&zero, 1.0).unwrap(), 0.0);
        let c = DyadicCutoff::default();
        assert_eq!(besov_norm(&zero, 1.0, 2.0, 2.0, &c).unwrap().value, 0.0);
    }

    #[test]
    fn band_limits() {
        let p = gaussian(3);
        let band = dyadic_band(&p);
        assert_eq!(band.first().copied(), Some(0.5));
        assert_eq!(band.last().copied(), Some(128.0));
        let c = DyadicCutoff::default();
        assert!(matches!(dyadic_piece(&p, 0.125, &c), Err(crate::Error::Domain(_))));
        assert!(matches!(dyadic_piece(&p, 1024.0, &c), Err(crate::Error::Domain(_))));
        assert!(besov_norm(&p, 0.0, 0.5, 2.0, &c).is_err());
    }

    #[test]
    fn pieces_reconstruct_band_limited_profile() {
        for dim in [3, 5] {
            let p = RadialProfile::from_fn(dim, RadialGrid::new(40.0, 1024).unwrap(), |r| {
                let s = if r == 0.0 { 4.0 } else { (4.0 * r).sin() / r };
                s * (-0.125 * r * r).exp()
            })
            .unwrap();
            let pieces = dyadic_pieces(&p, &DyadicCutoff::default()).unwrap();
            let mut sum = vec![0.0; p.grid.len()];
            for (_, q) in &pieces {
                for (a, b) in sum.iter_mut().zip(q.values()) {
                    *a += b;
                }
            }
            let err = sum.iter().zip(p.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-6 * p.samples.max_abs(), "n={dim}: {err:e}");
        }
    }

    #[test]
    fn separated_pieces_are_orthogonal_projections() {
        let p = gaussian(5);
        let c = DyadicCutoff::default();
        let once = dyadic_piece(&p, 1.0, &c).unwrap();
        let twice = dyadic_piece(&once, 4.0, &c).unwrap();
        assert!(twice.samples.max_abs() < 1e-10 * once.samples.max_abs());
    }

    #[test]
    fn l2_besov_matches_its_plancherel_form() {
        let c = DyadicCutoff::default();
        for dim in [3, 5] {
            let p = gaussian(dim);
            for s in [0.0, 1.0, 1.5] {
                let direct = besov_norm(&p, s, 2.0, 2.0, &c).unwrap().value;
                let plan = besov22_plancherel(&p, s, &c).unwrap();
                assert!((direct / plan - 1.0).abs() < 1e-8, "n={dim} s={s}");
            }
        }
    }

    #[test]
    fn l2_besov_is_equivalent_to_sobolev() {
        // m_s(rho) / rho^{2s} is bounded above and below on the band interior
        let c = DyadicCutoff::default();
        let lambdas: Vec<f64> = (-10..=10).map(|j| 2f64.powi(j)).collect();
        for s in [0.0, 1.0, 1.5] {
            for i in 0..200 {
                let rho = 2f64.powf(-4.0 + 8.0 * i as f64 / 200.0);
                let ratio = besov22_multiplier(rho, s, &lambdas, &c) / rho.powf(2.0 * s);
                assert!(ratio >= 0.5 * 0.25f64.powf(s) - 1e-12 && ratio <= 4.0f64.powf(s) + 1e-12, "s={s} rho={rho}: {ratio}");
            }
        }
    }

    #[test]
    fn embedding_l2_below_l1() {
        let c = DyadicCutoff::default();
        let p = gaussian(3);
        for s in [0.0, 1.0, 1.5] {
            let b22 = besov_norm(&p, s, 2.0, 2.0, &c).unwrap().value;
            let b21 = besov_norm(&p, s, 2.0, 1.0, &c).unwrap().value;
            assert!(b22 <= b21);
        }
    }
}
