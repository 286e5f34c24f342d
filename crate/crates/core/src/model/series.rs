//! Small-argument Taylor kernels.
//!
//! The coefficients are produced by `scripts/taylor_coefficients.py` and
//! embedded from `data/taylor_coefficients.txt`.

use std::sync::OnceLock;

const TABLE: &str = include_str!("../../data/taylor_coefficients.txt");
const MAX_DEGREE: usize = 10;

/// Below this |u| every kernel is evaluated from its Taylor polynomial.
pub const SERIES_SWITCH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    H1 = 0,
    H2,
    H3,
    H4,
    H5,
    H6,
    /// sin(u)/u
    Sinc,
    /// (u - sin u cos u)/u
    An,
    /// (sin x - x cos x)/x^3; tabulated only to cross-check `k5`
    #[allow(dead_code)]
    K5,
}

const NAMES: [&str; 9] = ["1", "2", "3", "4", "5", "6", "sinc", "an", "k5"];

type Table = [[f64; MAX_DEGREE + 1]; 9];

fn table() -> &'static Table {
    static CELL: OnceLock<Table> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut t = [[0.0; MAX_DEGREE + 1]; 9];
        for line in TABLE.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(id), Some(deg), Some(val)) = (it.next(), it.next(), it.next()) else {
                panic!("malformed Taylor table line: {line}");
            };
            let k = NAMES.iter().position(|n| *n == id).expect("unknown kernel id");
            let d: usize = deg.parse().expect("bad degree");
            t[k][d] = val.parse().expect("bad coefficient");
        }
        t
    })
}

/// Raw coefficient of `u^degree` in the series of `kernel`.
#[cfg(test)]
fn coefficient(kernel: Kernel, degree: usize) -> f64 {
    table()[kernel as usize][degree]
}

/// Degree-`degree` coefficient of the stripped coefficient `h~id` as
/// tabulated (the `alpha^2` factor of `h~2..h~4` is not included).
pub fn taylor_coefficient(id: crate::model::CoeffId, degree: usize) -> Option<f64> {
    let k = usize::from(id.index()) - 1;
    (degree <= MAX_DEGREE).then(|| table()[k][degree])
}

/// Evaluates the truncated Taylor polynomial (degree <= 10).
pub(crate) fn eval(kernel: Kernel, u: f64) -> f64 {
    let c = &table()[kernel as usize];
    c.iter().rev().fold(0.0, |acc, &ck| acc * u + ck)
}

#[inline]
pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < SERIES_SWITCH {
        eval(Kernel::Sinc, u)
    } else {
        u.sin() / u
    }
}

/// (u - sin u cos u)/u, stable near zero.
#[inline]
pub(crate) fn an_kernel(u: f64) -> f64 {
    if u.abs() < SERIES_SWITCH {
        eval(Kernel::An, u)
    } else {
        (u - u.sin() * u.cos()) / u
    }
}

/// (sin x - x cos x)/x^3, the 5D radial Fourier kernel.
#[inline]
pub(crate) fn k5(x: f64) -> f64 {
    if x.abs() < 0.5 {
        // wider switch: the closed form loses digits as 3 eps / x^2
        let x2 = x * x;
        // sum over (-1)^(k+1) 2k x^(2k-2)/(2k+1)! up to x^16
        let mut term = 1.0 / 3.0;
        let mut acc = term;
        for k in 2..=9u32 {
            let kf = k as f64;
            // ratio of consecutive terms
            term *= -x2 * kf / ((kf - 1.0) * (2.0 * kf) * (2.0 * kf + 1.0));
            acc += term;
        }
        acc
    } else {
        (x.sin() - x * x.cos()) / (x * x * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_every_kernel() {
        assert_eq!(coefficient(Kernel::H1, 0), -4.0 / 3.0);
        assert_eq!(coefficient(Kernel::H3, 0), 0.0);
        assert!((coefficient(Kernel::H3, 1) - 4.0 / 3.0).abs() < 1e-16);
        assert_eq!(coefficient(Kernel::Sinc, 0), 1.0);
        assert!((coefficient(Kernel::K5, 2) + 1.0 / 30.0).abs() < 1e-17);
    }

    #[test]
    fn k5_series_matches_closed_form_at_switch() {
        for &x in &[0.4999, 0.5, 0.5001] {
            let closed = (f64::sin(x) - x * f64::cos(x)) / (x * x * x);
            let mut acc = 0.0;
            let mut term = 1.0 / 3.0;
            acc += term;
            for k in 2..=9u32 {
                let kf = k as f64;
                term *= -x * x * kf / ((kf - 1.0) * (2.0 * kf) * (2.0 * kf + 1.0));
                acc += term;
            }
            assert!((acc - closed).abs() < 1e-14, "x={x}");
            // table series agrees too
            assert!((eval(Kernel::K5, x) - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn sinc_and_an_continuous_at_switch() {
        let lo = SERIES_SWITCH * (1.0 - 1e-12);
        let hi = SERIES_SWITCH * (1.0 + 1e-12);
        assert!((sinc(lo) - sinc(hi)).abs() < 1e-12);
        assert!((an_kernel(lo) - an_kernel(hi)).abs() < 1e-12);
    }
}
