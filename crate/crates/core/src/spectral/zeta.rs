//! Riemann zeta on the real line, for the endpoint corrections of the
//! frequency quadrature.

use statrs::function::gamma::gamma;
use std::f64::consts::PI;

/// `B_{2j} / (2j)!` for `j = 1..=6`.
const BERNOULLI_OVER_FACT: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];

/// Euler-Maclaurin summation, accurate for `x >= 0`, `x != 1`.
fn zeta_em(x: f64) -> f64 {
    const K: usize = 12;
    let k = K as f64;
    let head: f64 = (1..K).map(|n| (n as f64).powf(-x)).sum();
    let mut tail = k.powf(1.0 - x) / (x - 1.0) + 0.5 * k.powf(-x);
    // rising product x (x+1) ... (x+2j-2) times K^{-x-2j+1}
    let mut rising = x;
    let mut kpow = k.powf(-x - 1.0);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        tail += b * rising * kpow;
        let m = 2.0 * j as f64 + 1.0;
        rising *= (x + m) * (x + m + 1.0);
        kpow /= k * k;
    }
    head + tail
}

/// `zeta(x)` for real `x != 1`; negative arguments go through the
/// functional equation.
pub(crate) fn zeta(x: f64) -> f64 {
    if x >= 0.0 {
        return zeta_em(x);
    }
    // zeta(1 - z) = 2 (2 pi)^{-z} cos(pi z / 2) Gamma(z) zeta(z), z = 1 - x > 1
    let z = 1.0 - x;
    let c = (PI * z / 2.0).cos();
    if c.abs() < 1e-15 {
        return 0.0;
    }
    2.0 * (2.0 * PI).powf(-z) * c * gamma(z) * zeta_em(z)
}
