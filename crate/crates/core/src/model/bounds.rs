//! Sampled checks of the coefficient bounds and of the elementary
//! inequality `|sin u / r|^j <= C (1 + 2 alpha^2 sin^2 u / r^2)`.

use super::coefficients::{tilde_h_unchecked, CoeffId};

/// Step of the sixth-order central differences used for `∂_u`, `∂_u^2`.
pub const FD_STEP: f64 = 1e-3;

/// Largest derivative order checked.
pub const MAX_ORDER: usize = 2;

/// Decay exponent `k` in `|∂_u^j h~(u)| <~ <u>^{-k}`.
pub fn decay_power(id: CoeffId, order: usize) -> i32 {
    match id.index() {
        1 | 5 => {
            if order == 0 {
                2
            } else {
                3
            }
        }
        2 => 3,
        3 => 2,
        4 => 1,
        _ => 4,
    }
}

/// `⟨u⟩ = (1 + u^2)^{1/2}`.
#[inline]
pub fn japanese_bracket(u: f64) -> f64 {
    (1.0 + u * u).sqrt()
}

fn derivative(id: CoeffId, u: f64, alpha: f64, order: usize) -> f64 {
    let f = |x: f64| tilde_h_unchecked(id, x, alpha);
    let h = FD_STEP;
    match order {
        0 => f(u),
        1 => {
            (-f(u - 3.0 * h) + 9.0 * f(u - 2.0 * h) - 45.0 * f(u - h) + 45.0 * f(u + h)
                - 9.0 * f(u + 2.0 * h)
                + f(u + 3.0 * h))
                / (60.0 * h)
        }
        _ => {
            (2.0 * f(u - 3.0 * h) - 27.0 * f(u - 2.0 * h) + 270.0 * f(u - h) - 490.0 * f(u)
                + 270.0 * f(u + h)
                - 27.0 * f(u + 2.0 * h)
                + 2.0 * f(u + 3.0 * h))
                / (180.0 * h * h)
        }
    }
}

/// Sample set for the coefficient checks: a uniform core and dyadic tails.
#[derive(Debug, Clone)]
pub struct CoeffSamples {
    pub core: Vec<f64>,
    pub tail: Vec<f64>,
}

impl CoeffSamples {
    /// `core_points` uniform samples on `[-core_radius, core_radius]` plus
    /// `per_shell` samples of each sign in every dyadic shell
    /// `[2^k, 2^{k+1})` above the core up to `2^max_exp`.
    pub fn new(core_points: usize, core_radius: f64, per_shell: usize, max_exp: i32) -> Self {
        let core = (0..core_points)
            .map(|i| -core_radius + 2.0 * core_radius * i as f64 / (core_points - 1) as f64)
            .collect();
        let mut tail = Vec::new();
        let first = core_radius.log2().ceil() as i32;
        for k in first..max_exp {
            let lo = 2f64.powi(k);
            for i in 0..per_shell {
                let u = lo * (1.0 + i as f64 / per_shell as f64);
                tail.push(u);
                tail.push(-u);
            }
        }
        Self { core, tail }
    }
}

impl Default for CoeffSamples {
    fn default() -> Self {
        Self::new(100_000, 100.0, 256, 20)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffBoundReport {
    pub id: CoeffId,
    pub alpha: f64,
    /// `k` per derivative order.
    pub powers: [i32; MAX_ORDER + 1],
    /// `sup |∂^j h~| ⟨u⟩^k` over the core samples.
    pub core_sup: [f64; MAX_ORDER + 1],
    /// Same supremum over the dyadic tail samples.
    pub tail_sup: [f64; MAX_ORDER + 1],
    /// `None` when the coefficient carries no sign statement.
    pub sign_ok: Option<bool>,
}

impl CoeffBoundReport {
    pub fn worst(&self) -> [f64; MAX_ORDER + 1] {
        std::array::from_fn(|j| self.core_sup[j].max(self.tail_sup[j]))
    }

    /// The weighted quantity does not grow in the far tail: no tail supremum
    /// exceeds the core supremum by more than `slack`.
    pub fn bounded(&self, slack: f64) -> bool {
        (0..=MAX_ORDER).all(|j| {
            self.core_sup[j].is_finite() && self.tail_sup[j] <= self.core_sup[j] * (1.0 + slack)
        })
    }
}

pub fn check_coeff_bounds(id: CoeffId, alpha: f64, samples: &CoeffSamples) -> CoeffBoundReport {
    let powers: [i32; MAX_ORDER + 1] = std::array::from_fn(|j| decay_power(id, j));
    let sup = |pts: &[f64]| -> [f64; MAX_ORDER + 1] {
        std::array::from_fn(|j| {
            pts.iter()
                .map(|&u| derivative(id, u, alpha, j).abs() * japanese_bracket(u).powi(powers[j]))
                .fold(0.0, f64::max)
        })
    };
    let sign_ok = match id.index() {
        1 | 5 => Some(samples.core.iter().chain(&samples.tail).all(|&u| tilde_h_unchecked(id, u, alpha) <= 0.0)),
        6 => Some(samples.core.iter().chain(&samples.tail).all(|&u| tilde_h_unchecked(id, u, alpha) >= 0.0)),
        _ => None,
    };
    CoeffBoundReport {
        id,
        alpha,
        powers,
        core_sup: sup(&samples.core),
        tail_sup: sup(&samples.tail),
        sign_ok,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SinInequalityReport {
    pub alpha: f64,
    /// Sampled `sup |sin u / r|^j / (1 + 2 alpha^2 sin^2 u / r^2)` for j = 0, 1, 2.
    pub sup_ratio: [f64; 3],
    /// Analytic suprema `1`, `1/(2 sqrt 2 alpha)`, `1/(2 alpha^2)`.
    pub bound: [f64; 3],
}

impl SinInequalityReport {
    pub fn holds(&self) -> bool {
        (0..3).all(|j| self.sup_ratio[j] <= self.bound[j] * (1.0 + 1e-12))
    }
}

/// Default `(r, u)` sample: `r` log-spaced on `[1e-6, 1e3]`, `u` uniform on `[-20, 20]`.
pub fn default_sin_samples(nr: usize, nu: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(nr * nu);
    for i in 0..nr {
        let r = 10f64.powf(-6.0 + 9.0 * i as f64 / (nr - 1) as f64);
        for k in 0..nu {
            out.push((r, -20.0 + 40.0 * k as f64 / (nu - 1) as f64));
        }
    }
    out
}

pub fn check_sin_inequality(alpha: f64, samples: &[(f64, f64)]) -> SinInequalityReport {
    let a2 = alpha * alpha;
    let mut sup_ratio = [0.0f64; 3];
    for &(r, u) in samples {
        let x = (u.sin() / r).abs();
        let d = 1.0 + 2.0 * a2 * x * x;
        for (j, s) in sup_ratio.iter_mut().enumerate() {
            *s = s.max(x.powi(j as i32) / d);
        }
    }
    SinInequalityReport {
        alpha,
        sup_ratio,
        bound: [1.0, 1.0 / (2.0 * std::f64::consts::SQRT_2 * alpha), 1.0 / (2.0 * a2)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_samples() -> CoeffSamples {
        CoeffSamples::new(20_001, 100.0, 64, 20)
    }

    #[test]
    fn signs() {
        let s = small_samples();
        assert_eq!(check_coeff_bounds(CoeffId::H1, 1.0, &s).sign_ok, Some(true));
        assert_eq!(check_coeff_bounds(CoeffId::H5, 1.0, &s).sign_ok, Some(true));
        assert_eq!(check_coeff_bounds(CoeffId::H6, 1.0, &s).sign_ok, Some(true));
        assert_eq!(check_coeff_bounds(CoeffId::H2, 1.0, &s).sign_ok, None);
    }

    #[test]
    fn weighted_bounds_do_not_grow() {
        let s = small_samples();
        for id in CoeffId::ALL {
            let rep = check_coeff_bounds(id, 1.0, &s);
            assert!(rep.bounded(0.05), "{id}: {rep:?}");
        }
    }

    /// A wrong decay exponent shows up as tail growth.
    #[test]
    fn too_strong_weight_is_detected() {
        let s = small_samples();
        let u_big = 1e5f64;
        let val = tilde_h_unchecked(CoeffId::H4, u_big + 0.4, 1.0).abs() * japanese_bracket(u_big).powi(2);
        let core_max = s
            .core
            .iter()
            .map(|&u| tilde_h_unchecked(CoeffId::H4, u, 1.0).abs() * japanese_bracket(u).powi(2))
            .fold(0.0, f64::max);
        assert!(val > 10.0 * core_max);
    }

    #[test]
    fn sin_inequality() {
        let samples = default_sin_samples(200, 401);
        let rep = check_sin_inequality(1.0, &samples);
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.sup_ratio[0] <= 1.0);
        assert!(rep.sup_ratio[2] <= 0.5);
        // the j = 1 supremum is nearly attained on a dense sample
        assert!(rep.sup_ratio[1] > 0.99 * rep.bound[1]);
    }
}
