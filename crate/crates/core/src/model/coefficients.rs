//! The stripped nonlinearity coefficients `h~1 .. h~6` and the Skyrme
//! denominator `1 + 2 alpha^2 sin^2(u) / r^2`.

use super::series::{self, Kernel, SERIES_SWITCH};
use crate::error::{domain, Result};

/// Selects one of the six stripped coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffId(u8);

impl CoeffId {
    pub const H1: CoeffId = CoeffId(1);
    pub const H2: CoeffId = CoeffId(2);
    pub const H3: CoeffId = CoeffId(3);
    pub const H4: CoeffId = CoeffId(4);
    pub const H5: CoeffId = CoeffId(5);
    pub const H6: CoeffId = CoeffId(6);

    pub const ALL: [CoeffId; 6] = [Self::H1, Self::H2, Self::H3, Self::H4, Self::H5, Self::H6];

    pub fn new(index: u8) -> Result<Self> {
        if (1..=6).contains(&index) {
            Ok(CoeffId(index))
        } else {
            Err(domain(format!("coefficient index {index} outside 1..=6")))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// `h~2`, `h~3`, `h~4` carry a factor `alpha^2`.
    pub fn scales_with_alpha(self) -> bool {
        matches!(self.0, 2..=4)
    }

    /// Only `h~3` is odd in `u`.
    pub fn is_odd(self) -> bool {
        self.0 == 3
    }

    fn kernel(self) -> Kernel {
        match self.0 {
            1 => Kernel::H1,
            2 => Kernel::H2,
            3 => Kernel::H3,
            4 => Kernel::H4,
            5 => Kernel::H5,
            _ => Kernel::H6,
        }
    }
}

impl std::fmt::Display for CoeffId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "h~{}", self.0)
    }
}

/// Closed form without the `alpha^2` factor.
fn closed_form(id: CoeffId, u: f64) -> f64 {
    let (s, c) = u.sin_cos();
    let s2u = 2.0 * s * c;
    match id.0 {
        1 | 5 => (s2u - 2.0 * u) / (u * u * u),
        2 => s2u * (s * s - u * u) / u.powi(5),
        3 => 4.0 * s * (s - u * c) / (u * u * u),
        4 => s2u / u,
        _ => (u - s * c) * (2.0 * s * s) / u.powi(5),
    }
}

/// Unchecked evaluation for hot loops; `alpha` multiplies ids 2..=4.
#[inline]
pub(crate) fn tilde_h_unchecked(id: CoeffId, u: f64, alpha: f64) -> f64 {
    let base = if u.abs() < SERIES_SWITCH {
        series::eval(id.kernel(), u)
    } else {
        closed_form(id, u)
    };
    if id.scales_with_alpha() {
        alpha * alpha * base
    } else {
        base
    }
}

/// Evaluates `h~id(u)`: the closed form for `|u| >= 0.1`, the degree-10 Taylor
/// polynomial below.
pub fn tilde_h(id: CoeffId, u: f64, alpha: f64) -> Result<f64> {
    if !u.is_finite() || !alpha.is_finite() {
        return Err(domain(format!("{id}: non-finite argument u={u}, alpha={alpha}")));
    }
    if id.scales_with_alpha() && alpha <= 0.0 {
        return Err(domain(format!("{id} requires alpha > 0, got {alpha}")));
    }
    Ok(tilde_h_unchecked(id, u, alpha))
}

/// `1 + 2 alpha^2 (sin(u)/r)^2` with `u = r v` and `sin(u)/r = v sinc(u)`;
/// equals `1 + 2 alpha^2 v^2` on the axis.
pub fn skyrme_denominator(r: f64, v: f64, alpha: f64) -> f64 {
    let s = v * series::sinc(r * v);
    1.0 + 2.0 * alpha * alpha * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coeff_id_range() {
        assert!(CoeffId::new(0).is_err());
        assert!(CoeffId::new(7).is_err());
        assert_eq!(CoeffId::new(4).unwrap(), CoeffId::H4);
    }

    #[test]
    fn limits_at_zero() {
        let a = 1.3;
        let expect = [
            (CoeffId::H1, -4.0 / 3.0),
            (CoeffId::H2, -2.0 * a * a / 3.0),
            (CoeffId::H3, 0.0),
            (CoeffId::H4, 2.0 * a * a),
            (CoeffId::H5, -4.0 / 3.0),
            (CoeffId::H6, 4.0 / 3.0),
        ];
        for (id, val) in expect {
            assert!((tilde_h(id, 0.0, a).unwrap() - val).abs() < 1e-15, "{id}");
            // h~3 is odd with slope (4/3) alpha^2 at the origin
            let near = if id == CoeffId::H3 { 4.0 * a * a / 3.0 * 1e-9 } else { val };
            assert!((tilde_h(id, 1e-9, a).unwrap() - near).abs() < 1e-12, "{id}");
        }
    }

    #[test]
    fn h1_at_half_pi() {
        let v = tilde_h(CoeffId::H1, std::f64::consts::FRAC_PI_2, 1.0).unwrap();
        // (sin(pi) - pi)/(pi/2)^3 = -8/pi^2
        assert!((v + 0.810_569_469_138_702_3).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(tilde_h(CoeffId::H1, f64::NAN, 1.0).is_err());
        assert!(tilde_h(CoeffId::H2, 0.3, 0.0).is_err());
        assert!(tilde_h(CoeffId::H1, 0.3, 0.0).is_ok());
    }

    #[test]
    fn continuity_at_switch() {
        for id in CoeffId::ALL {
            let lo = series::eval(id.kernel(), SERIES_SWITCH);
            let hi = closed_form(id, SERIES_SWITCH);
            let rel = (lo - hi).abs() / hi.abs().max(1e-300);
            assert!((lo - hi).abs() <= 1e-12, "{id}: |{lo}-{hi}|");
            assert!(rel <= 1e-12, "{id}: rel {rel}");
        }
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(skyrme_denominator(0.0, 0.0, 1.0), 1.0);
        assert!((skyrme_denominator(0.0, 1.0, 1.0) - 3.0).abs() < 1e-15);
        let d = skyrme_denominator(2.0, std::f64::consts::FRAC_PI_2, 1.0);
        assert!((d - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn parity(u in -50.0f64..50.0, a in 0.1f64..3.0) {
            for id in CoeffId::ALL {
                let p = tilde_h(id, u, a).unwrap();
                let m = tilde_h(id, -u, a).unwrap();
                if id.is_odd() {
                    prop_assert!((p + m).abs() <= 1e-13);
                } else {
                    prop_assert!((p - m).abs() <= 1e-13);
                }
            }
        }

        #[test]
        fn denominator_at_least_one(r in 0.0f64..10.0, v in -20.0f64..20.0, a in 0.0f64..3.0) {
            prop_assert!(skyrme_denominator(r, v, a) >= 1.0);
        }
    }
}
