use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

const SERIES_MAX: f64 = 4.0;
const MILLER_MAX: f64 = 25.0;

/// Bessel function of the first kind, order zero, for `x >= 0`.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("bessel_j0 needs finite x >= 0, got {x}")));
    }
    Ok(if x <= SERIES_MAX {
        j0_series(x)
    } else if x <= MILLER_MAX {
        j0_miller(x)
    } else {
        j0_hankel(x)
    })
}

pub(crate) fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

// Backward recurrence from well above x, normalised by J0 + 2 sum J_2k = 1.
fn j0_miller(x: f64) -> f64 {
    let start = 2 * ((x as usize + 40) / 2);
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    for n in (1..=start).rev() {
        let prev = 2.0 * n as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{n-1}
        if (n - 1) % 2 == 0 && n > 1 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    cur / (norm + cur)
}

// Hankel asymptotic expansion, summed until the terms stop decreasing.
fn j0_hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let j = (2 * k - 1) as f64;
        t *= -j * j / (k as f64 * 8.0 * x);
        if t.abs() >= last || t.abs() < 1e-18 {
            break;
        }
        last = t.abs();
        // t_k enters P for even k and Q for odd k, with alternating sign
        match k % 4 {
            0 => p += t,
            1 => q += t,
            2 => p -= t,
            _ => q -= t,
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
