//! Uniform radial mesh on `[0, R]` with parity-aware fourth-order stencils.
//!
//! Nodes sit at `r_j = j dr`, `j = 0..=N`. Values at `r < 0` are never
//! stored: they are reflected from the interior according to the field's
//! parity. The outer edge uses one-sided stencils of the same order.

use crate::error::{config, Error, Result};

/// Reflection stencils reach this many nodes past the axis.
pub const GHOST_DEPTH: usize = 3;

/// Smallest admissible number of cells.
pub const MIN_CELLS: usize = 8;

/// Closure of the evolution at `r = R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OuterBoundary {
    /// The outermost nodes are frozen. Correct as long as the domain is large
    /// enough that no signal reaches the reported region from `r = R`.
    #[default]
    Isolated,
    /// First-order outgoing condition `v_t + v_r + 2 v / R = 0`.
    Sommerfeld,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_max: f64,
    cells: usize,
    pub outer: OuterBoundary,
}

impl RadialGrid {
    pub fn new(r_max: f64, cells: usize) -> Result<Self> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(config(format!("outer radius must be positive, got {r_max}")));
        }
        if cells < MIN_CELLS {
            return Err(config(format!("need at least {MIN_CELLS} cells, got {cells}")));
        }
        Ok(Self { r_max, cells, outer: OuterBoundary::Isolated })
    }

    pub fn with_boundary(mut self, outer: OuterBoundary) -> Self {
        self.outer = outer;
        self
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Number of cells `N`; there are `N + 1` nodes.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dr(&self) -> f64 {
        self.r_max / self.cells as f64
    }

    #[inline]
    pub fn r(&self, j: usize) -> f64 {
        if j == self.cells {
            self.r_max
        } else {
            j as f64 * self.dr()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.r(j)).collect()
    }

    /// Samples `f` on the nodes.
    pub fn sample(&self, parity: Parity, f: impl Fn(f64) -> f64) -> FieldSamples {
        FieldSamples::new((0..self.len()).map(|j| f(self.r(j))).collect(), parity)
    }

    fn check(&self, f: &FieldSamples) -> Result<()> {
        if f.values.len() != self.len() {
            return Err(config(format!(
                "field has {} samples, grid has {} nodes",
                f.values.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Behaviour of a radial function under `r -> -r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of `f(r) r^p`.
    pub fn times_power(self, p: i32) -> Self {
        if p.rem_euclid(2) == 0 {
            self
        } else {
            self.flip()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSamples {
    pub values: Vec<f64>,
    pub parity: Parity,
}

impl FieldSamples {
    pub fn new(values: Vec<f64>, parity: Parity) -> Self {
        Self { values, parity }
    }

    pub fn zeros(len: usize, parity: Parity) -> Self {
        Self { values: vec![0.0; len], parity }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Value at signed index `j >= -GHOST_DEPTH`, reflecting across the axis.
#[inline(always)]
fn at(f: &[f64], sign: f64, j: isize) -> f64 {
    if j >= 0 {
        f[j as usize]
    } else {
        sign * f[(-j) as usize]
    }
}

/// Fourth-order first derivative into `out`.
pub(crate) fn d_r_into(f: &[f64], parity: Parity, dr: f64, out: &mut [f64]) {
    let n = f.len() - 1;
    let s = parity.sign();
    let c = 1.0 / (12.0 * dr);
    for j in 0..2.min(n) {
        let i = j as isize;
        out[j] = c * (at(f, s, i - 2) - 8.0 * at(f, s, i - 1) + 8.0 * f[j + 1] - f[j + 2]);
    }
    for j in 2..n - 1 {
        out[j] = c * (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]);
    }
    out[n - 1] = c * (3.0 * f[n] + 10.0 * f[n - 1] - 18.0 * f[n - 2] + 6.0 * f[n - 3] - f[n - 4]);
    out[n] = c * (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]);
}

/// Fourth-order second derivative into `out`.
pub(crate) fn d_rr_into(f: &[f64], parity: Parity, dr: f64, out: &mut [f64]) {
    let n = f.len() - 1;
    let s = parity.sign();
    let c = 1.0 / (12.0 * dr * dr);
    for j in 0..2 {
        let i = j as isize;
        out[j] = c * (-at(f, s, i - 2) + 16.0 * at(f, s, i - 1) - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]);
    }
    for j in 2..n - 1 {
        out[j] = c * (-f[j - 2] + 16.0 * f[j - 1] - 30.0 * f[j] + 16.0 * f[j + 1] - f[j + 2]);
    }
    out[n - 1] = c
        * (10.0 * f[n] - 15.0 * f[n - 1] - 4.0 * f[n - 2] + 14.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
    out[n] = c
        * (45.0 * f[n] - 154.0 * f[n - 1] + 214.0 * f[n - 2] - 156.0 * f[n - 3] + 61.0 * f[n - 4]
            - 10.0 * f[n - 5]);
}

/// `f_rr + (4/r) f_r` of an even field into `out`; `5 f_rr(0)` on the axis.
pub(crate) fn laplacian5_into(f: &[f64], dr: f64, out: &mut [f64]) {
    let n = f.len() - 1;
    let c2 = 1.0 / (12.0 * dr * dr);
    let c1 = 1.0 / (12.0 * dr);
    // axis: f_{-1} = f_1, f_{-2} = f_2
    out[0] = 5.0 * c2 * (-2.0 * f[2] + 32.0 * f[1] - 30.0 * f[0]);
    // j = 1 with f_{-1} = f_1
    let frr = c2 * (-f[1] + 16.0 * f[0] - 30.0 * f[1] + 16.0 * f[2] - f[3]);
    let fr = c1 * (f[1] - 8.0 * f[0] + 8.0 * f[2] - f[3]);
    out[1] = frr + 4.0 * fr / dr;
    for j in 2..n - 1 {
        let (a, b, m, d, e) = (f[j - 2], f[j - 1], f[j], f[j + 1], f[j + 2]);
        let frr = c2 * (-a + 16.0 * b - 30.0 * m + 16.0 * d - e);
        let fr = c1 * (a - 8.0 * b + 8.0 * d - e);
        out[j] = frr + 4.0 * fr / (j as f64 * dr);
    }
    for j in [n - 1, n] {
        let (frr, fr) = if j == n {
            (
                c2 * (45.0 * f[n] - 154.0 * f[n - 1] + 214.0 * f[n - 2] - 156.0 * f[n - 3]
                    + 61.0 * f[n - 4]
                    - 10.0 * f[n - 5]),
                c1 * (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]),
            )
        } else {
            (
                c2 * (10.0 * f[n] - 15.0 * f[n - 1] - 4.0 * f[n - 2] + 14.0 * f[n - 3] - 6.0 * f[n - 4]
                    + f[n - 5]),
                c1 * (3.0 * f[n] + 10.0 * f[n - 1] - 18.0 * f[n - 2] + 6.0 * f[n - 3] - f[n - 4]),
            )
        };
        out[j] = frr + 4.0 * fr / (j as f64 * dr);
    }
}

/// Fourth-order centered first derivative; the result has the opposite parity.
pub fn d_r(f: &FieldSamples, g: &RadialGrid) -> Result<FieldSamples> {
    g.check(f)?;
    let mut out = vec![0.0; f.len()];
    d_r_into(&f.values, f.parity, g.dr(), &mut out);
    Ok(FieldSamples::new(out, f.parity.flip()))
}

/// Fourth-order second derivative; same parity as the input.
pub fn d_rr(f: &FieldSamples, g: &RadialGrid) -> Result<FieldSamples> {
    g.check(f)?;
    let mut out = vec![0.0; f.len()];
    d_rr_into(&f.values, f.parity, g.dr(), &mut out);
    Ok(FieldSamples::new(out, f.parity))
}

/// Radial Laplacian on `R^5`, `f_rr + (4/r) f_r`, for even fields.
pub fn laplacian5(f: &FieldSamples, g: &RadialGrid) -> Result<FieldSamples> {
    g.check(f)?;
    if f.parity != Parity::Even {
        return Err(Error::Contract("laplacian5 needs an even field".into()));
    }
    let mut out = vec![0.0; f.len()];
    laplacian5_into(&f.values, g.dr(), &mut out);
    Ok(FieldSamples::new(out, Parity::Even))
}

/// Quadrature weights for `∫₀^R g(r) dr` where `g` has the given parity:
/// the trapezoid rule with Euler-Maclaurin end corrections through `h^4`.
/// On the axis the derivative corrections use reflected values, so they vanish
/// for even integrands.
pub fn quadrature_weights(g: &RadialGrid, integrand: Parity) -> Vec<f64> {
    let n = g.cells();
    let h = g.dr();
    let mut w = vec![h; n + 1];
    w[0] = 0.5 * h;
    w[n] = 0.5 * h;
    let c1 = -h * h / 12.0;
    let c3 = h.powi(4) / 720.0;
    // ∫ = T + c1 (g'(R) - g'(0)) + c3 (g'''(R) - g'''(0))
    // g'(R) fourth order, backward
    for (k, coef) in [25.0, -48.0, 36.0, -16.0, 3.0].iter().enumerate() {
        w[n - k] += c1 * coef / (12.0 * h);
    }
    // g'''(R) second order, backward
    for (k, coef) in [5.0, -18.0, 24.0, -14.0, 3.0].iter().enumerate() {
        w[n - k] += c3 * coef / (2.0 * h.powi(3));
    }
    if integrand == Parity::Odd {
        // g'(0) = (16 g1 - 2 g2) / (12 h), g'''(0) = (g2 - 2 g1) / h^3
        w[1] -= c1 * 16.0 / (12.0 * h);
        w[2] -= c1 * -2.0 / (12.0 * h);
        w[1] -= c3 * -2.0 / h.powi(3);
        w[2] -= c3 / h.powi(3);
    }
    w
}

/// `∫₀^R f(r) r^p dr` by corrected trapezoid quadrature.
pub fn radial_integral(f: &FieldSamples, g: &RadialGrid, weight_power: i32) -> f64 {
    assert_eq!(f.len(), g.len(), "field/grid length mismatch");
    let peak = f.max_abs();
    let edge = f.values[g.cells()].abs();
    if peak > 0.0 && edge > 1e-8 * peak {
        // evolutions call this every trace row; say it once per process
        static WARNED: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(false);
        if !WARNED.swap(true, std::sync::atomic::Ordering::Relaxed) {
            log::warn!("radial_integral: integrand not decayed at R (|f(R)| = {edge:e}, max = {peak:e}); further warnings suppressed");
        } else {
            log::debug!("radial_integral: integrand not decayed at R (|f(R)| = {edge:e}, max = {peak:e})");
        }
    }
    let w = quadrature_weights(g, f.parity.times_power(weight_power));
    f.values
        .iter()
        .zip(&w)
        .enumerate()
        .map(|(j, (fv, wj))| fv * wj * g.r(j).powi(weight_power))
        .sum()
}

/// Six-point Lagrange interpolation at radius `r`; `None` outside `[0, R]`.
pub fn interpolate(f: &FieldSamples, g: &RadialGrid, r: f64) -> Option<f64> {
    let r = r.abs();
    if r > g.r_max() * (1.0 + 1e-14) {
        return None;
    }
    let n = g.cells() as isize;
    let x = r / g.dr();
    let base = (x.floor() as isize).min(n - 1);
    // stencil base-2 ..= base+3, shifted inward at the outer edge
    let start = (base - 2).min(n - 5);
    let s = f.parity.sign();
    let mut acc = 0.0;
    for i in 0..6 {
        let ji = start + i;
        let mut l = 1.0;
        for k in 0..6 {
            if k != i {
                let jk = start + k;
                l *= (x - jk as f64) / (ji - jk) as f64;
            }
        }
        acc += l * at(&f.values, s, ji);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid(n: usize, r: f64) -> RadialGrid {
        RadialGrid::new(r, n).unwrap()
    }

    #[test]
    fn construction() {
        assert!(RadialGrid::new(1.0, 7).is_err());
        assert!(RadialGrid::new(0.0, 64).is_err());
        let g = grid(10, 2.0);
        assert_eq!(g.len(), 11);
        assert_eq!(g.r(0), 0.0);
        assert_eq!(g.r(10), 2.0);
    }

    #[test]
    fn polynomial_exactness() {
        let g = grid(16, 2.0);
        for deg in 0..=4 {
            for parity in [Parity::Even, Parity::Odd] {
                if (deg % 2 == 0) != (parity == Parity::Even) {
                    continue;
                }
                let f = g.sample(parity, |r| r.powi(deg));
                let d = d_r(&f, &g).unwrap();
                assert_eq!(d.parity, parity.flip());
                for j in 0..g.len() {
                    let exact = if deg == 0 { 0.0 } else { deg as f64 * g.r(j).powi(deg - 1) };
                    assert_abs_diff_eq!(d.values[j], exact, epsilon = 1e-12);
                }
                let dd = d_rr(&f, &g).unwrap();
                for j in 0..g.len() {
                    let exact = if deg < 2 { 0.0 } else { (deg * (deg - 1)) as f64 * g.r(j).powi(deg - 2) };
                    assert_abs_diff_eq!(dd.values[j], exact, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn one_sided_second_derivative_exact_for_quintics() {
        let g = grid(16, 1.0);
        let f = g.sample(Parity::Odd, |r| r.powi(5));
        let dd = d_rr(&f, &g).unwrap();
        for j in g.cells() - 1..=g.cells() {
            assert_abs_diff_eq!(dd.values[j], 20.0 * g.r(j).powi(3), epsilon = 1e-10);
        }
    }

    #[test]
    fn laplacian_of_r_squared() {
        let g = grid(32, 3.0);
        let f = g.sample(Parity::Even, |r| r * r);
        let l = laplacian5(&f, &g).unwrap();
        for v in &l.values {
            assert_abs_diff_eq!(*v, 10.0, epsilon = 1e-11);
        }
        let c = g.sample(Parity::Even, |_| 2.5);
        assert!(laplacian5(&c, &g).unwrap().values.iter().all(|v| v.abs() < 1e-12));
        let odd = g.sample(Parity::Odd, |r| r);
        assert!(matches!(laplacian5(&odd, &g), Err(Error::Contract(_))));
    }

    #[test]
    fn constant_has_zero_derivative_exactly() {
        let g = grid(20, 1.0);
        let f = g.sample(Parity::Even, |_| 3.0);
        assert!(d_r(&f, &g).unwrap().values.iter().all(|&v| v == 0.0));
    }

    fn max_err(n: usize, op: &dyn Fn(&RadialGrid) -> f64) -> f64 {
        op(&grid(n, 4.0))
    }

    #[test]
    fn refinement_order() {
        let dr_err = |g: &RadialGrid| {
            let f = g.sample(Parity::Odd, f64::sin);
            let d = d_r(&f, g).unwrap();
            (0..g.len()).map(|j| (d.values[j] - g.r(j).cos()).abs()).fold(0.0, f64::max)
        };
        let lap_err = |g: &RadialGrid| {
            // f = exp(-r^2): f_rr + 4 f_r / r = (4 r^2 - 10) exp(-r^2)
            let f = g.sample(Parity::Even, |r| (-r * r).exp());
            let l = laplacian5(&f, g).unwrap();
            (0..g.len())
                .map(|j| {
                    let r = g.r(j);
                    (l.values[j] - (4.0 * r * r - 10.0) * (-r * r).exp()).abs()
                })
                .fold(0.0, f64::max)
        };
        let int_err = |g: &RadialGrid| {
            let f = g.sample(Parity::Even, |r| (r * 0.7).cos() * (-0.3 * r * r).exp());
            // odd integrand f r: no reflection symmetry to lean on
            let exact = {
                // ∫0^4 r cos(0.7 r) e^{-0.3 r^2} dr by a fine composite Simpson rule
                let m = 200_000;
                let h = 4.0 / m as f64;
                let q = |r: f64| r * (r * 0.7).cos() * (-0.3 * r * r).exp();
                (0..=m)
                    .map(|i| {
                        let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                        w * q(i as f64 * h)
                    })
                    .sum::<f64>()
                    * h
                    / 3.0
            };
            (radial_integral(&f, g, 1) - exact).abs()
        };
        for (name, op) in [("d_r", &dr_err as &dyn Fn(&RadialGrid) -> f64), ("lap", &lap_err), ("int", &int_err)] {
            let e1 = max_err(64, op);
            let e2 = max_err(128, op);
            let e3 = max_err(256, op);
            assert!(e1 / e2 >= 14.0 && e2 / e3 >= 14.0, "{name}: {e1:e} {e2:e} {e3:e}");
        }
    }

    #[test]
    fn integral_examples() {
        let g = grid(64, 1.0);
        let one = g.sample(Parity::Even, |_| 1.0);
        assert_abs_diff_eq!(radial_integral(&one, &g, 2), 1.0 / 3.0, epsilon = 1e-12);
        let g = grid(1000, 10.0);
        let gauss = g.sample(Parity::Even, |r| (-r * r).exp());
        assert_abs_diff_eq!(radial_integral(&gauss, &g, 2), std::f64::consts::PI.sqrt() / 4.0, epsilon = 1e-10);
        let zero = g.sample(Parity::Even, |_| 0.0);
        assert_eq!(radial_integral(&zero, &g, 2), 0.0);
    }

    #[test]
    fn interpolation_is_high_order() {
        let g = grid(200, 10.0);
        let f = g.sample(Parity::Even, |r| (-r * r / 2.0).exp());
        for &r in &[0.0, 0.013, 0.77, 3.3333, 9.99, 10.0] {
            let v = interpolate(&f, &g, r).unwrap();
            assert_abs_diff_eq!(v, (-r * r / 2.0).exp(), epsilon = 1e-8);
        }
        assert!(interpolate(&f, &g, 10.5).is_none());
    }
}
