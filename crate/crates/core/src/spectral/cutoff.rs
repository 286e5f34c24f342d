//! Smooth dyadic partition of unity.

/// Binomial coefficient for the small arguments used here.
fn binom(n: u64, k: u64) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64)
}

/// Littlewood-Paley profile `chi(s) = phi(s) - phi(2 s)` where `phi = 1` on
/// `[0, 1]`, `phi = 0` on `[2, inf)` and is a `C^k` polynomial smoothstep in
/// between. Sums over dyadic dilations telescope to exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicCutoff {
    order: usize,
    coeffs: Vec<f64>,
}

impl Default for DyadicCutoff {
    fn default() -> Self {
        Self::new(7).expect("order 7 is valid")
    }
}

impl DyadicCutoff {
    pub const MIN_ORDER: usize = 4;

    pub fn new(order: usize) -> crate::Result<Self> {
        if order < Self::MIN_ORDER {
            return Err(crate::error::domain(format!(
                "cutoff smoothness must be >= {}, got {order}",
                Self::MIN_ORDER
            )));
        }
        let k = order as u64;
        // S(x) = x^{k+1} sum_n C(k+n, n) C(2k+1, k-n) (-x)^n
        let coeffs = (0..=k)
            .map(|n| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(k + n, n) * binom(2 * k + 1, k - n)
            })
            .collect();
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Polynomial part on `[0, 1]`; accurate near 0 only.
    fn rising(&self, x: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        x.powi(self.order as i32 + 1) * poly
    }

    /// Low-pass profile: 1 on `[0, 1]`, 0 beyond 2.
    pub fn phi(&self, s: f64) -> f64 {
        let x = s.abs() - 1.0;
        if x <= 0.0 {
            1.0
        } else if x >= 1.0 {
            0.0
        } else if x > 0.5 {
            // smoothstep symmetry S(x) = 1 - S(1 - x) keeps the tail accurate
            self.rising(1.0 - x)
        } else {
            1.0 - self.rising(x)
        }
    }

    /// Shell profile supported in `(1/2, 2)`.
    pub fn chi(&self, s: f64) -> f64 {
        self.phi(s) - self.phi(2.0 * s)
    }
}
