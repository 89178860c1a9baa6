use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Points with `|z| + Re z` at or below this use the power series; the rest
/// use the Legendre continued fraction.
pub const SERIES_REGION: f64 = 10.0;

const S_MAX: f64 = 3.0;
const MAX_TERMS: usize = 20_000;

fn check_args(s: f64, z: Complex64) -> Result<()> {
    if !(s > 0.0 && s <= S_MAX) {
        return Err(Error::InvalidArgument(format!("incomplete gamma supports s in (0, 3], got {s}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument("incomplete gamma argument must be finite".into()));
    }
    Ok(())
}

fn in_series_region(z: Complex64) -> bool {
    z.norm() + z.re <= SERIES_REGION
}

/// Principal power `z^s` with `arg z` in `(-pi, pi]`.
fn cpow(z: Complex64, s: f64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (z.ln() * s).exp()
}

// gamma(s, z) = z^s sum (-z)^n / (n! (s + n))
fn lower_series(s: f64, z: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0 / s, 0.0);
    for n in 1..MAX_TERMS {
        term *= -z / n as f64;
        let add = term / (s + n as f64);
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() && n as f64 > z.norm() {
            return Ok(cpow(z, s) * sum);
        }
    }
    Err(Error::InvalidArgument(format!("incomplete gamma series did not converge at z = {z}")))
}

// Legendre continued fraction for Gamma(s, z), modified Lentz.
fn upper_cf(s: f64, z: Complex64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let guard = |x: Complex64| if x.norm() < TINY { Complex64::new(TINY, 0.0) } else { x };
    let mut b = z + 1.0 - s;
    let mut f = guard(b);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for n in 1..MAX_TERMS {
        let a = -(n as f64) * (n as f64 - s);
        b += 2.0;
        d = guard(b + a * d);
        c = guard(b + a / c);
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((-z).exp() * cpow(z, s) / f);
        }
    }
    Err(Error::InvalidArgument(format!("incomplete gamma continued fraction did not converge at z = {z}")))
}

/// Upper incomplete gamma `Gamma(s, z)` for `s` in `(0, 3]` on the principal branch.
pub fn upper_incomplete_gamma(s: f64, z: Complex64) -> Result<Complex64> {
    check_args(s, z)?;
    if in_series_region(z) {
        Ok(gamma(s) - lower_series(s, z)?)
    } else {
        upper_cf(s, z)
    }
}

/// Lower incomplete gamma `gamma(s, z) = Gamma(s) - Gamma(s, z)`.
pub fn lower_incomplete_gamma(s: f64, z: Complex64) -> Result<Complex64> {
    check_args(s, z)?;
    if in_series_region(z) {
        lower_series(s, z)
    } else {
        Ok(gamma(s) - upper_cf(s, z)?)
    }
}

/// `Gamma(s, z1) - Gamma(s, z2)`, the integral of `t^(s-1) e^(-t)` from `z1`
/// to `z2`. Computed from the lower function when both points are small, so
/// that nearby points do not cancel against `Gamma(s)`.
pub fn gamma_increment(s: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_args(s, z1)?;
    check_args(s, z2)?;
    if in_series_region(z1) && in_series_region(z2) {
        Ok(lower_series(s, z2)? - lower_series(s, z1)?)
    } else {
        Ok(upper_incomplete_gamma(s, z1)? - upper_incomplete_gamma(s, z2)?)
    }
}
