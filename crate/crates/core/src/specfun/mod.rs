//! Special functions and the quadrature oracle.

mod bessel;
mod incgamma;
mod quadrature;
mod roots;

pub use bessel::bessel_j0;
pub use incgamma::{gamma_increment, lower_incomplete_gamma, upper_incomplete_gamma, SERIES_REGION};
pub use quadrature::{integrate, integrate_oscillatory, PanelRule, QuadratureResult, QuadratureSpec};
pub use roots::{brent_root, golden_section_max, golden_section_min};

/// `sin(x)/x`, with a Taylor series near the removable singularity.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// `(cos x - 1)/x`, which vanishes at the origin.
pub fn cosc_m1(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        -x / 2.0 * (1.0 - x2 / 12.0)
    } else {
        (x.cos() - 1.0) / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-16);
        assert!((sinc(2.3311) - 0.310_851_859_782_749_7).abs() < 1e-12);
        // both branches agree at the switch point
        let x = 1e-4;
        assert!((sinc(x * (1.0 - 1e-12)) - x.sin() / x).abs() < 1e-15);
    }

    #[test]
    fn cosc_matches_direct_form() {
        for &x in &[1e-3, 0.3, -2.0, 10.0] {
            assert!((cosc_m1(x) - (x.cos() - 1.0) / x).abs() < 1e-13);
        }
        assert_eq!(cosc_m1(0.0), 0.0);
        assert!((cosc_m1(9e-5) - (-4.5e-5)).abs() < 1e-12);
    }
}
