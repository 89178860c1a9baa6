//! Radial integrals `int_{L1}^{L2} trig(eta) trig(kappa eta) eta^beta d eta`
//! in closed form via the upper incomplete gamma function, with a quadrature
//! oracle that gates every evaluation below resonance.
//!
//! Writing `E(c) = int e^{i c eta} eta^beta` gives
//! `E(c) = (i/c)^s [Gamma(s, -i c L1) - Gamma(s, -i c L2)]` with `s = beta + 1`
//! and principal powers. The four integrals are combinations of the cosine
//! and sine moments of `E` at `r+- = kappa +- 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{gamma_increment, integrate_oscillatory, sinc, QuadratureSpec};

/// Relative disagreement with the oracle above which the closed form is rejected.
pub const GATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JKind {
    /// `cos(eta) cos(kappa eta)`
    Cc,
    /// `sin(eta) cos(kappa eta)`
    Sc,
    /// `cos(eta) sin(kappa eta)`
    Cs,
    /// `sin(eta) sin(kappa eta)`
    Ss,
}

impl JKind {
    pub const ALL: [JKind; 4] = [JKind::Cc, JKind::Sc, JKind::Cs, JKind::Ss];

    pub fn name(self) -> &'static str {
        match self {
            JKind::Cc => "cc",
            JKind::Sc => "sc",
            JKind::Cs => "cs",
            JKind::Ss => "ss",
        }
    }

    fn integrand(self, kappa: f64, beta: f64) -> impl Fn(f64) -> Complex64 {
        move |eta: f64| {
            let w = eta.powf(beta);
            let v = match self {
                JKind::Cc => eta.cos() * (kappa * eta).cos(),
                JKind::Sc => eta.sin() * (kappa * eta).cos(),
                JKind::Cs => eta.cos() * (kappa * eta).sin(),
                JKind::Ss => eta.sin() * (kappa * eta).sin(),
            };
            Complex64::new(v * w, 0.0)
        }
    }
}

impl std::str::FromStr for JKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc" => Ok(JKind::Cc),
            "sc" => Ok(JKind::Sc),
            "cs" => Ok(JKind::Cs),
            "ss" => Ok(JKind::Ss),
            other => Err(Error::InvalidArgument(format!("unknown integral kind {other:?}"))),
        }
    }
}

/// Exponent and limits of a radial integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIntegral {
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
}

impl RadialIntegral {
    pub fn new(beta: f64, lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && upper > lower && upper.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "radial integral needs 0 < lower < upper, got [{lower}, {upper}]"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidArgument("beta must be finite".into()));
        }
        Ok(Self { beta, lower, upper })
    }

    /// Limits `k0a` and `k0a N'` for lattice constant `k0a` and `N' = b N^(1/d)`.
    pub fn from_lattice(beta: f64, k0a: f64, nprime: f64) -> Result<Self> {
        Self::new(beta, k0a, k0a * nprime)
    }

    pub fn closed_form_supported(&self) -> bool {
        self.beta > -1.0 && self.beta <= 2.0
    }

    /// `int eta^beta` over the limits, the natural magnitude of the integrals.
    pub fn weight(&self) -> f64 {
        let s = self.beta + 1.0;
        (self.upper.powf(s) - self.lower.powf(s)) / s
    }
}

fn cpow(z: Complex64, p: f64) -> Complex64 {
    (z.ln() * p).exp()
}

/// Upper-limit treatment in the incomplete-gamma sums.
#[derive(Clone, Copy, PartialEq)]
enum Upper {
    Exact,
    /// `Gamma(s, z) ~ z^(s-1) e^(-z)` at the upper limit.
    Leading,
}

// Cosine and sine moments of eta^beta at frequency c.
fn moments(ri: &RadialIntegral, c: f64, upper: Upper) -> Result<(f64, f64)> {
    let s = ri.beta + 1.0;
    let (l1, l2) = (ri.lower, ri.upper);
    if c == 0.0 {
        return Ok((ri.weight(), 0.0));
    }
    if c.abs() * l2 <= 1.0 {
        return Ok(small_frequency_moments(ri, c));
    }
    let i = Complex64::i();
    let pre = cpow(i, s) * cpow(Complex64::new(c, 0.0), -s);
    let (zm1, zm2) = (-i * c * l1, -i * c * l2);
    let (zp1, zp2) = (i * c * l1, i * c * l2);
    let (gm, gp) = match upper {
        Upper::Exact => (gamma_increment(s, zm1, zm2)?, gamma_increment(s, zp1, zp2)?),
        Upper::Leading => {
            let lead = |z: Complex64| cpow(z, s - 1.0) * (-z).exp();
            (
                crate::specfun::upper_incomplete_gamma(s, zm1)? - lead(zm2),
                crate::specfun::upper_incomplete_gamma(s, zp1)? - lead(zp2),
            )
        }
    };
    let m = Complex64::from_polar(1.0, -PI * ri.beta * c.signum());
    let e_plus = pre * gm;
    let e_minus = -pre * m * gp;
    let cos_moment = 0.5 * (e_plus + e_minus);
    let sin_moment = (e_plus - e_minus) / (2.0 * i);
    Ok((cos_moment.re, sin_moment.re))
}

// Termwise integration of the cos/sin Taylor series; the incomplete-gamma
// route cancels badly when |c| L2 is small.
fn small_frequency_moments(ri: &RadialIntegral, c: f64) -> (f64, f64) {
    let s = ri.beta + 1.0;
    let (l1, l2) = (ri.lower, ri.upper);
    let (mut cos_m, mut sin_m) = (0.0, 0.0);
    // term_n = (-1)^.. c^n / n!, paired with int eta^(beta+n)
    let mut term = 1.0;
    for n in 0..60 {
        let p = s + n as f64;
        let add = term * (l2.powf(p) - l1.powf(p)) / p;
        match n % 4 {
            0 => cos_m += add,
            1 => sin_m += add,
            2 => cos_m -= add,
            _ => sin_m -= add,
        }
        if add.abs() < 1e-18 * (cos_m.abs() + sin_m.abs()) {
            break;
        }
        term *= c / (n + 1) as f64;
    }
    (cos_m, sin_m)
}

fn combine(kind: JKind, ri: &RadialIntegral, kappa: f64, upper: Upper) -> Result<f64> {
    if kind == JKind::Cs {
        // exchange k <-> k0: J_cs = kappa^-(beta+1) int_{kappa L1}^{kappa L2} sin(eta) cos(eta/kappa) eta^beta
        if kappa <= 0.0 {
            return Err(Error::InvalidArgument(format!("k/k0 must be positive, got {kappa}")));
        }
        let swapped = RadialIntegral::new(ri.beta, kappa * ri.lower, kappa * ri.upper)?;
        // 1/kappa -/+ 1 without the cancellation near resonance
        let inner = combine_at(JKind::Sc, &swapped, (1.0 - kappa) / kappa, (1.0 + kappa) / kappa, upper)?;
        return Ok(kappa.powf(-(ri.beta + 1.0)) * inner);
    }
    combine_at(kind, ri, kappa - 1.0, kappa + 1.0, upper)
}

// Combination of the moments at frequencies r- and r+.
fn combine_at(kind: JKind, ri: &RadialIntegral, r_minus: f64, r_plus: f64, upper: Upper) -> Result<f64> {
    let (cm, sm) = moments(ri, r_minus, upper)?;
    let (cp, sp) = moments(ri, r_plus, upper)?;
    Ok(match kind {
        JKind::Cc => 0.5 * (cm + cp),
        JKind::Sc => 0.5 * (sp - sm),
        JKind::Ss => 0.5 * (cm - cp),
        JKind::Cs => unreachable!(),
    })
}

/// Incomplete-gamma closed form, without the oracle gate.
pub fn closed_form_raw(kind: JKind, ri: &RadialIntegral, kappa: f64) -> Result<f64> {
    if !ri.closed_form_supported() {
        return Err(Error::InvalidArgument(format!("closed form needs beta in (-1, 2], got {}", ri.beta)));
    }
    combine(kind, ri, kappa, Upper::Exact)
}

/// The integrals with the upper-limit incomplete gammas replaced by their
/// large-argument leading terms, valid for `N' >> 1` away from resonance.
/// At `kappa = 1` the cosine moment of the resonant term is kept exactly.
pub fn off_resonant_j(kind: JKind, ri: &RadialIntegral, kappa: f64) -> Result<f64> {
    if !ri.closed_form_supported() {
        return Err(Error::InvalidArgument(format!("closed form needs beta in (-1, 2], got {}", ri.beta)));
    }
    combine(kind, ri, kappa, Upper::Leading)
}

/// Leading large-`N'` value at resonance, `(k0 a N')^(beta+1) / (2 (beta+1))`,
/// shared by `J_cc` and `J_ss`.
pub fn resonant_j(ri: &RadialIntegral) -> f64 {
    let s = ri.beta + 1.0;
    ri.upper.powf(s) / (2.0 * s)
}

// (cos(n x) - cos(x)) / x, stable for small x.
fn cos_diff_over(x: f64, n: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    -2.0 * (0.5 * (n + 1.0) * x).sin() * (0.5 * (n - 1.0) * x).sin() / x
}

/// Explicit `beta = 0` forms with `L1 = k0a`, `L2 = k0a N'`.
pub fn beta_zero_j(kind: JKind, k0a: f64, nprime: f64, kappa: f64) -> f64 {
    let (rm, rp) = ((kappa - 1.0) * k0a, (kappa + 1.0) * k0a);
    let h = 0.5 * k0a;
    match kind {
        JKind::Cc => h * (nprime * (sinc(rm * nprime) + sinc(rp * nprime)) - sinc(rp) - sinc(rm)),
        JKind::Ss => h * (nprime * (sinc(rm * nprime) - sinc(rp * nprime)) + sinc(rp) - sinc(rm)),
        JKind::Sc => h * (cos_diff_over(rm, nprime) - cos_diff_over(rp, nprime)),
        JKind::Cs => -h * (cos_diff_over(rm, nprime) + cos_diff_over(rp, nprime)),
    }
}

/// Quadrature oracle for the radial integrals.
pub fn quadrature_j(kind: JKind, ri: &RadialIntegral, kappa: f64, spec: &QuadratureSpec) -> Result<f64> {
    let f = kind.integrand(kappa, ri.beta);
    let spec = spec.with_abs_tol(spec.abs_tol.max(1e-14 * ri.weight()));
    let r = integrate_oscillatory(f, ri.lower, ri.upper, Some(1.0 + kappa.abs()), &spec)?;
    Ok(r.value.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JSource {
    ClosedForm,
    BetaZero,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JEvaluation {
    pub kind: JKind,
    pub value: f64,
    pub source: JSource,
    /// Set when the closed form was unavailable or disagreed with the oracle.
    pub flagged: bool,
    /// Oracle value, when it was computed.
    pub oracle: Option<f64>,
}

/// Relative difference with a floor proportional to `int eta^beta`.
pub fn relative_difference(a: f64, b: f64, ri: &RadialIntegral) -> f64 {
    let floor = 1e-12 * ri.weight();
    (a - b).abs() / b.abs().max(a.abs()).max(floor)
}

/// Closed-form evaluation with the quadrature gate below resonance.
pub fn evaluate_j(kind: JKind, ri: &RadialIntegral, kappa: f64) -> Result<JEvaluation> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidArgument(format!("k/k0 must be positive, got {kappa}")));
    }
    let spec = QuadratureSpec::default();
    if !ri.closed_form_supported() {
        let q = quadrature_j(kind, ri, kappa, &spec)?;
        return Ok(JEvaluation {
            kind,
            value: q,
            source: JSource::Quadrature,
            flagged: true,
            oracle: Some(q),
        });
    }
    let (value, source) = if ri.beta == 0.0 {
        (beta_zero_j(kind, ri.lower, ri.upper / ri.lower, kappa), JSource::BetaZero)
    } else {
        (closed_form_raw(kind, ri, kappa)?, JSource::ClosedForm)
    };
    if kappa >= 1.0 {
        return Ok(JEvaluation {
            kind,
            value,
            source,
            flagged: false,
            oracle: None,
        });
    }
    let q = quadrature_j(kind, ri, kappa, &spec)?;
    if relative_difference(value, q, ri) > GATE_TOL || !value.is_finite() {
        Ok(JEvaluation {
            kind,
            value: q,
            source: JSource::Quadrature,
            flagged: true,
            oracle: Some(q),
        })
    } else {
        Ok(JEvaluation {
            kind,
            value,
            source,
            flagged: false,
            oracle: Some(q),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(beta: f64) -> RadialIntegral {
        RadialIntegral::new(beta, 3.0, 150.0).unwrap()
    }

    // mpmath quadrature with L1 = 3, L2 = 150
    const CC: [(f64, f64, f64); 8] = [
        (-0.5, 0.98, 3.319_786_864_62),
        (-0.5, 1.02, 3.302_122_639_66),
        (0.0, 0.98, 2.364_596_356_05),
        (0.0, 1.02, 2.327_902_403_06),
        (0.5, 0.98, -113.016_114_163),
        (0.5, 1.02, -113.146_888_142),
        (1.0, 0.98, -1922.810_278_96),
        (1.0, 1.02, -1923.841_340_77),
    ];
    const SC: [(f64, f64, f64); 8] = [
        (-0.5, 0.98, 6.405_982_743_52),
        (-0.5, 1.02, -6.141_280_998_2),
        (0.0, 0.98, 49.972_729_370_6),
        (0.0, 1.02, -49.503_777_316_4),
        (0.5, 0.98, 428.158_154_237),
        (0.5, 1.02, -427.418_230_942),
        (1.0, 0.98, 3894.180_380_79),
        (1.0, 1.02, -3893.960_260_93),
    ];

    #[test]
    fn closed_forms_match_reference_values() {
        for (table, kind) in [(CC, JKind::Cc), (SC, JKind::Sc)] {
            for (beta, kappa, want) in table {
                let got = closed_form_raw(kind, &ri(beta), kappa).unwrap();
                assert!(((got - want) / want).abs() < 1e-9, "{kind:?} beta={beta} kappa={kappa}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn all_kinds_match_the_oracle() {
        let spec = QuadratureSpec::default();
        for beta in [-0.5, 0.0, 0.5, 1.0, 1.7] {
            let r = RadialIntegral::from_lattice(beta, 3.0, 50.0).unwrap();
            for kappa in [0.98, 1.0 - 1e-6, 1.0, 1.0 + 1e-6, 1.02, 1.4] {
                for kind in JKind::ALL {
                    let cf = closed_form_raw(kind, &r, kappa).unwrap();
                    let q = quadrature_j(kind, &r, kappa, &spec).unwrap();
                    let rel = relative_difference(cf, q, &r);
                    assert!(rel < 1e-8, "{kind:?} beta={beta} kappa={kappa}: {cf} vs {q} ({rel:e})");
                }
            }
        }
    }

    #[test]
    fn beta_zero_forms_agree_with_incomplete_gamma() {
        for kappa in [0.5, 0.98, 1.0, 1.0 + 1e-7, 1.02, 1.3] {
            let r = RadialIntegral::from_lattice(0.0, 3.0, 500.0).unwrap();
            for kind in JKind::ALL {
                let explicit = beta_zero_j(kind, 3.0, 500.0, kappa);
                let general = closed_form_raw(kind, &r, kappa).unwrap();
                assert!(relative_difference(explicit, general, &r) < 1e-10, "{kind:?} kappa={kappa}");
            }
        }
    }

    #[test]
    fn beta_zero_resonant_limit() {
        let v = beta_zero_j(JKind::Cc, 3.0, 500.0, 1.0);
        // k0a/2 N' plus O(1) edge terms
        assert!((v - 750.0).abs() < 2.0);
        assert!((v - (750.0 - 1.5 * (1.0 + sinc(6.0)) + 1.5 * 500.0 * sinc(3000.0))).abs() < 1e-12);
    }

    #[test]
    fn exchange_relation_at_beta_zero() {
        let (k0a, np) = (3.0, 500.0);
        for kappa in [0.97, 0.999, 1.01] {
            let cs = beta_zero_j(JKind::Cs, k0a, np, kappa);
            let sc = beta_zero_j(JKind::Sc, k0a, np, kappa);
            let rp = (kappa + 1.0) * k0a;
            let exact = k0a * (rp.cos() - (rp * np).cos()) / rp;
            assert!((cs + sc - exact).abs() < 1e-10 * sc.abs().max(1.0));
            // so J_cs = -J_sc only up to an O(1) remainder while J_sc grows with N'
            assert!((cs + sc).abs() <= 2.0 * k0a / rp);
        }
    }

    #[test]
    fn resonant_asymptote() {
        let r = RadialIntegral::from_lattice(0.5, 3.0, 5000.0).unwrap();
        let exact = closed_form_raw(JKind::Cc, &r, 1.0).unwrap();
        assert!(((exact - resonant_j(&r)) / exact).abs() < 1e-2);
        let ss = closed_form_raw(JKind::Ss, &r, 1.0).unwrap();
        assert!(((ss - resonant_j(&r)) / ss).abs() < 1e-2);
    }

    #[test]
    fn off_resonant_asymptote_approaches_exact() {
        let r = RadialIntegral::from_lattice(0.5, 3.0, 5000.0).unwrap();
        for kind in JKind::ALL {
            for kappa in [0.98, 1.02] {
                let exact = closed_form_raw(kind, &r, kappa).unwrap();
                let approx = off_resonant_j(kind, &r, kappa).unwrap();
                // measured against the size of the upper-endpoint oscillation
                let amplitude = r.upper.powf(r.beta) / (kappa - 1.0).abs();
                assert!((exact - approx).abs() < 1e-2 * amplitude, "{kind:?} {kappa}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn gate_accepts_good_closed_forms() {
        let r = RadialIntegral::from_lattice(0.5, 3.0, 500.0).unwrap();
        let below = evaluate_j(JKind::Cc, &r, 0.98).unwrap();
        assert_eq!(below.source, JSource::ClosedForm);
        assert!(!below.flagged);
        assert!(below.oracle.is_some());
        let above = evaluate_j(JKind::Sc, &r, 1.02).unwrap();
        assert!(above.oracle.is_none());
        let zero = evaluate_j(JKind::Ss, &RadialIntegral::from_lattice(0.0, 3.0, 50.0).unwrap(), 0.99).unwrap();
        assert_eq!(zero.source, JSource::BetaZero);
    }

    #[test]
    fn unsupported_beta_falls_back_with_flag() {
        let r = RadialIntegral::from_lattice(-1.5, 3.0, 20.0).unwrap();
        let e = evaluate_j(JKind::Cc, &r, 1.01).unwrap();
        assert!(e.flagged);
        assert_eq!(e.source, JSource::Quadrature);
        assert!(closed_form_raw(JKind::Cc, &r, 1.01).is_err());
    }
}
