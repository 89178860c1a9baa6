//! Cross-checks between the lattice numerics and the continuum analytics,
//! run by `superrad validate`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use superrad_core::analytics::{
    closed_form_raw, quadrature_j, relative_difference, scaling_exponent_check, universal_collapse, JKind,
    RadialIntegral,
};
use superrad_core::specfun::QuadratureSpec;
use superrad_core::{
    build_lattice, coupling_matrix, dicke_matrix, solve_design, solve_modes, CouplingModel, DesignTarget, Dimension,
    LatticeSpec, Sign, SingleAtomTerm,
};

use crate::error::Result;
use crate::params::Suite;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    /// Worst observed value of the suite's figure of merit.
    pub metric: f64,
    pub threshold: f64,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &'static str, metric: f64, threshold: f64, details: Value) -> Self {
        Self {
            suite,
            passed: metric < threshold,
            metric,
            threshold,
            details,
        }
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<Vec<SuiteReport>> {
    let selected: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Trace,
            Suite::Dicke,
            Suite::Collapse,
            Suite::Closedform,
            Suite::Roundtrip,
            Suite::Scaling,
        ],
        one => vec![one],
    };
    selected
        .into_iter()
        .map(|s| match s {
            Suite::Trace => trace(seed),
            Suite::Dicke => dicke(seed),
            Suite::Collapse => collapse(),
            Suite::Closedform => closed_form(),
            Suite::Roundtrip => round_trip(seed),
            Suite::Scaling => scaling(),
            Suite::All => unreachable!(),
        })
        .collect()
}

fn trace(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut cases = Vec::new();
    for _ in 0..20 {
        let d: u32 = rng.random_range(1..=3);
        let half = match d {
            1 => rng.random_range(1..=40),
            2 => rng.random_range(1..=8),
            _ => rng.random_range(1..=3),
        };
        let (alpha, k0a, dw) = (rng.random_range(0.0..2.0), rng.random_range(1.1..8.0), rng.random_range(-1.0..1.0));
        let dim = Dimension::new(d)?;
        let model = CouplingModel::standard(dim, rng.random_range(0.1..3.0), alpha)?;
        let lattice = build_lattice(&LatticeSpec::new(d, k0a, 2 * half)?);
        let n = lattice.len() as f64;
        let res = solve_modes(&coupling_matrix(&lattice, &[model], SingleAtomTerm::new(dw))?)?;
        let rate = ((res.total_rate() - n) / n).abs();
        let shift = (res.total_shift() - n * dw).abs() / (n * dw.abs().max(1.0));
        worst = worst.max(rate).max(shift);
        cases.push(json!({ "d": d, "m": 2 * half, "alpha": alpha, "k0a": k0a, "rate_error": rate, "shift_error": shift }));
    }
    Ok(SuiteReport::new("trace", worst, 1e-9, json!(cases)))
}

fn dicke(seed: u64) -> Result<SuiteReport> {
    let dw = ChaCha8Rng::seed_from_u64(seed).random_range(-1.0..1.0);
    let mut worst = 0.0f64;
    let mut cases = Vec::new();
    for n in [2i64, 16, 256] {
        let res = solve_modes(&dicke_matrix(n, SingleAtomTerm::new(dw))?)?;
        let nf = n as f64;
        let bright = ((res.rates[0] - nf) / nf).abs();
        let dark = res.rates[1..].iter().fold(0.0f64, |m, g| m.max(g.abs()));
        let shift = (res.shifts[0] - nf * dw).abs() / (nf * dw.abs().max(1e-300));
        worst = worst.max(bright).max(dark).max(shift);
        cases.push(json!({ "n": n, "bright_rate_error": bright, "max_dark_rate": dark, "bright_shift_error": shift }));
    }
    Ok(SuiteReport::new("dicke", worst, 1e-10, json!({ "delta_omega0": dw, "cases": cases })))
}

fn collapse() -> Result<SuiteReport> {
    let mut worst = 0.0f64;
    let mut cases = Vec::new();
    for (dim, alpha, side) in [(Dimension::One, 0.0, 4000), (Dimension::Two, 0.5, 200)] {
        let r = universal_collapse(dim, alpha, side, 3.0, 1.0, 3.0 * std::f64::consts::PI, 601)?;
        worst = worst.max(r.sup_chi_error).max(r.sup_shift_error);
        cases.push(json!({
            "d": dim.get(),
            "alpha": alpha,
            "m": side,
            "sup_chi_error": r.sup_chi_error,
            "sup_shift_error": r.sup_shift_error,
            "shift_hat_resonant": r.shift_hat_resonant,
        }));
    }
    Ok(SuiteReport::new("collapse", worst, 0.05, json!(cases)))
}

fn closed_form() -> Result<SuiteReport> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    let mut cells = Vec::new();
    for beta in [-0.5, 0.0, 0.5, 1.0] {
        for kappa in [0.98, 1.0 - 1e-6, 1.0 + 1e-6, 1.02] {
            let mut cell = 0.0f64;
            for nprime in [50.0, 500.0] {
                let ri = RadialIntegral::from_lattice(beta, 3.0, nprime)?;
                for kind in JKind::ALL {
                    let cf = closed_form_raw(kind, &ri, kappa)?;
                    let q = quadrature_j(kind, &ri, kappa, &spec)?;
                    cell = cell.max(relative_difference(cf, q, &ri));
                }
            }
            worst = worst.max(cell);
            cells.push(json!({ "beta": beta, "kappa": kappa, "max_relative_error": cell }));
        }
    }
    Ok(SuiteReport::new("closedform", worst, 1e-6, json!(cells)))
}

fn round_trip(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let (mut solved, mut redrawn) = (0, 0);
    while solved < 200 {
        let gamma = 1.0 + rng.random_range(1e-3..999.0);
        let rho = rng.random_range(-5.0..5.0);
        let d: u32 = rng.random_range(1..=3);
        let alpha = rng.random_range(0.0..0.45 * (d as f64 + 1.0));
        let mut target = DesignTarget::new(
            gamma,
            rho * (gamma - 1.0),
            Dimension::new(d)?,
            alpha,
            rng.random_range(0.2..5.0),
            rng.random_range(1.5..6.0),
        );
        target.epsilon = Some(if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus });
        let s = match solve_design(&target) {
            Ok(s) => s,
            Err(superrad_core::Error::Infeasible(_)) => {
                redrawn += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        solved += 1;
        worst = worst
            .max(s.residuals_exact.gamma.abs() / gamma)
            .max(s.residuals_exact.delta.abs() / target.delta.abs().max(gamma));
    }
    Ok(SuiteReport::new("roundtrip", worst, 1e-9, json!({ "targets": solved, "infeasible_redrawn": redrawn })))
}

fn scaling() -> Result<SuiteReport> {
    let mut worst = 0.0f64;
    let mut fits = Vec::new();
    for (dim, alpha, sides) in [
        (Dimension::One, 0.0, vec![500, 2000, 8000]),
        (Dimension::One, 0.5, vec![500, 2000, 8000]),
        (Dimension::Two, 0.5, vec![40, 80, 160]),
    ] {
        let fit = scaling_exponent_check(dim, alpha, &sides, 3.0, 1.0)?;
        worst = worst.max((fit.slope - fit.expected).abs());
        fits.push(json!({ "d": dim.get(), "alpha": alpha, "slope": fit.slope, "expected": fit.expected }));
    }
    Ok(SuiteReport::new("scaling", worst, 0.03, json!(fits)))
}
