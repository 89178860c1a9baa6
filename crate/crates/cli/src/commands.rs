use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::json;
use superrad_core::analytics::{
    chi_max_forms, continuum_i, default_direction, l_d, shift_of_xi, superradiant_at_resonance,
};
use superrad_core::coupling::{coupling_matrix_with_limit, DEFAULT_MAX_ATOMS};
use superrad_core::spectrum::{k_grid, SiteCouplings};
use superrad_core::{
    build_lattice, chi_max, delta_for_xi, dicke_matrix, solve_design, solve_modes, AnalyticContext, CouplingModel,
    DesignTarget, Dimension, Error, LatticeSpec, SingleAtomTerm, Wavevector,
};

use crate::error::{CliError, Result};
use crate::output::{to_json, Format, Table, SCHEMA_VERSION};
use crate::params::{dimension, require, sign, AnalyticParams, DesignParams, DispersionParams, SimulateParams};

fn lattice_model(d: Option<u32>, a: Option<f64>, alpha: Option<f64>, epsilon: Option<i32>) -> Result<CouplingModel> {
    let dim = dimension(d)?;
    let model = CouplingModel::standard(dim, a.unwrap_or(1.0), require(alpha, "alpha")?)?;
    Ok(model.with_epsilon(sign(epsilon)?))
}

pub fn simulate(p: &SimulateParams) -> Result<Vec<u8>> {
    let self_term = SingleAtomTerm::new(p.delta_omega0.unwrap_or(0.0));
    let limit = p.max_atoms.unwrap_or(DEFAULT_MAX_ATOMS);
    let matrix = if p.dicke.unwrap_or(false) {
        let n = require(p.n, "n")?;
        if n > 0 && n as usize > limit {
            return Err(Error::TooManyAtoms { atoms: n as usize, limit }.into());
        }
        dicke_matrix(n, self_term)?
    } else {
        let model = lattice_model(p.d, p.a, p.alpha, p.epsilon)?;
        let spec = LatticeSpec::new(model.dim().get(), require(p.k0a, "k0a")?, require(p.m, "m")?)?;
        if spec.atom_count() > limit {
            return Err(Error::TooManyAtoms { atoms: spec.atom_count(), limit }.into());
        }
        coupling_matrix_with_limit(&build_lattice(&spec), &[model], self_term, limit)?
    };
    let res = solve_modes(&matrix)?;
    match p.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = Table::new(&["mode", "gamma", "delta", "energy_re", "energy_im"]);
            for (n, e) in res.eigenvalues.iter().enumerate() {
                t.push(vec![n.into(), res.rates[n].into(), res.shifts[n].into(), e.re.into(), e.im.into()]);
            }
            t.to_csv()
        }
        Format::Json => {
            let modes: Vec<_> = (0..res.len())
                .map(|n| {
                    let mut mode = json!({ "gamma": res.rates[n], "delta": res.shifts[n] });
                    if p.vectors.unwrap_or(false) {
                        let v: Vec<[f64; 2]> = res.eigenvectors.column(n).iter().map(|z| [z.re, z.im]).collect();
                        mode["vector"] = json!(v);
                    }
                    mode
                })
                .collect();
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "simulate",
                "params": p,
                "atoms": res.len(),
                "residual": res.residual,
                "total_gamma": res.total_rate(),
                "total_delta": res.total_shift(),
                "modes": modes,
            }))
        }
    }
}

fn scan_grid(
    ctx: &AnalyticContext,
    k_min: Option<f64>,
    k_max: Option<f64>,
    xi_max: Option<f64>,
    points: Option<usize>,
) -> Result<Vec<f64>> {
    let points = points.unwrap_or(201);
    let (lo, hi) = match (k_min, k_max) {
        (Some(lo), Some(hi)) => (lo, hi),
        (None, None) => {
            let xi = xi_max.unwrap_or(3.0 * PI);
            (ctx.k_of_xi(-xi), ctx.k_of_xi(xi))
        }
        _ => return Err(CliError::Usage("give both --k-min and --k-max, or neither".into())),
    };
    if !(lo > 0.0) {
        return Err(CliError::Usage(format!("k/k0 grid must stay positive, starts at {lo}")));
    }
    Ok(k_grid(lo, hi, points)?)
}

fn theta_for(dim: Dimension, theta: Option<f64>) -> Option<f64> {
    match dim {
        Dimension::Three => Some(theta.unwrap_or(FRAC_PI_2)),
        _ => None,
    }
}

pub fn dispersion(p: &DispersionParams) -> Result<Vec<u8>> {
    let model = lattice_model(p.d, p.a, p.alpha, p.epsilon)?;
    let dim = model.dim();
    let spec = LatticeSpec::new(dim.get(), require(p.k0a, "k0a")?, require(p.m, "m")?)?;
    let theta = theta_for(dim, p.theta);
    let ctx = AnalyticContext::for_lattice(&spec, &model, theta)?;
    let ks = scan_grid(&ctx, p.k_min, p.k_max, p.xi_max, p.points)?;
    let (default_theta, default_azimuth) = default_direction(dim);
    let (theta, azimuth) = (theta.unwrap_or(default_theta), p.azimuth.unwrap_or(default_azimuth));

    let sites = SiteCouplings::new(&build_lattice(&spec), &[model])?;
    let resonant = sites.point(&Wavevector::new(1.0, theta, azimuth));
    let scale = resonant.chi - 1.0;
    let eps = model.epsilon().as_f64();
    let points: Vec<_> = {
        use rayon::prelude::*;
        ks.par_iter().map(|&k| sites.point(&Wavevector::new(k, theta, azimuth))).collect()
    };

    match p.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = Table::new(&["k", "xi", "chi_hat", "shift_hat", "chi", "shift", "re_i", "im_i"]);
            for pt in &points {
                t.push(vec![
                    pt.k.into(),
                    ctx.xi(pt.k).into(),
                    ((pt.chi - 1.0) / scale).into(),
                    (pt.shift / (eps * scale)).into(),
                    pt.chi.into(),
                    pt.shift.into(),
                    pt.i_d.re.into(),
                    pt.i_d.im.into(),
                ]);
            }
            t.to_csv()
        }
        Format::Json => {
            let rows: Vec<_> = points
                .iter()
                .map(|pt| {
                    json!({
                        "k": pt.k,
                        "xi": ctx.xi(pt.k),
                        "chi_hat": (pt.chi - 1.0) / scale,
                        "shift_hat": pt.shift / (eps * scale),
                        "chi": pt.chi,
                        "shift": pt.shift,
                        "re_i": pt.i_d.re,
                        "im_i": pt.i_d.im,
                    })
                })
                .collect();
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "dispersion",
                "params": p,
                "atoms": spec.atom_count(),
                "theta": theta,
                "azimuth": azimuth,
                "chi_resonant": resonant.chi,
                "chi_max_continuum": chi_max(&ctx)?,
                "points": rows,
            }))
        }
    }
}

pub fn analytic(p: &AnalyticParams) -> Result<Vec<u8>> {
    let model = lattice_model(p.d, p.a, p.alpha, p.epsilon)?;
    let dim = model.dim();
    let atoms = match (p.atoms, p.m) {
        (Some(n), _) => n,
        (None, Some(m)) => (m as f64).powi(dim.get() as i32),
        (None, None) => return Err(CliError::Usage("missing required parameter --atoms (or --m)".into())),
    };
    let ctx = AnalyticContext::for_model(&model, require(p.k0a, "k0a")?, atoms, theta_for(dim, p.theta))?;
    let cm = chi_max(&ctx)?;
    let ks = scan_grid(&ctx, p.k_min, p.k_max, p.xi_max, p.points)?;
    let results = {
        use rayon::prelude::*;
        ks.par_iter().map(|&k| continuum_i(&ctx, k)).collect::<superrad_core::Result<Vec<_>>>()?
    };

    match p.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = Table::new(&[
                "k", "xi", "chi", "shift", "re_i", "im_i", "chi_curve", "shift_curve", "in_window", "flagged",
            ]);
            for r in &results {
                t.push(vec![
                    r.k.into(),
                    r.xi.into(),
                    r.chi.into(),
                    r.shift.into(),
                    r.i_d.re.into(),
                    r.i_d.im.into(),
                    superrad_core::analytics::chi_of_xi(r.xi, cm).into(),
                    shift_of_xi(r.xi, cm, ctx.epsilon()).into(),
                    r.in_window.into(),
                    r.flagged.into(),
                ]);
            }
            t.to_csv()
        }
        Format::Json => {
            let mut warnings = ctx.warnings();
            if results.iter().any(|r| !r.in_window) {
                warnings.push(format!(
                    "some grid points lie outside the continuum window |k - k0| <= {:.3e}",
                    ctx.window_half_width()
                ));
            }
            let rows: Vec<_> = results
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "xi": r.xi,
                        "chi": r.chi,
                        "shift": r.shift,
                        "re_i": r.i_d.re,
                        "im_i": r.i_d.im,
                        "chi_curve": superrad_core::analytics::chi_of_xi(r.xi, cm),
                        "shift_curve": shift_of_xi(r.xi, cm, ctx.epsilon()),
                        "in_window": r.in_window,
                        "flagged": r.flagged,
                        "parts": r.parts,
                    })
                })
                .collect();
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "analytic",
                "params": p,
                "atoms": atoms,
                "beta": ctx.beta(),
                "nprime": ctx.nprime(),
                "xi_scale": ctx.xi_scale(),
                "window_half_width": ctx.window_half_width(),
                "chi_max": cm,
                "chi_max_forms": chi_max_forms(&ctx)?,
                "l_d": l_d(dim, ctx.alpha(), ctx.strength().norm(), Some(ctx.theta()))?,
                "superradiant_at_resonance": superradiant_at_resonance(&ctx)?,
                "warnings": warnings,
                "points": rows,
            }))
        }
    }
}

pub fn design(p: &DesignParams) -> Result<Vec<u8>> {
    let gamma = require(p.gamma, "gamma")?;
    let epsilon = sign(p.epsilon)?;
    let delta = match (p.delta, p.xi) {
        (Some(delta), None) => delta,
        (None, Some(xi)) => delta_for_xi(gamma, xi, epsilon)?,
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --delta or --xi, not both".into())),
        (None, None) => return Err(CliError::Usage("missing required parameter --delta (or --xi)".into())),
    };
    let target = DesignTarget {
        gamma,
        delta,
        dim: dimension(p.d)?,
        alpha: require(p.alpha, "alpha")?,
        epsilon: Some(epsilon),
        magnitude: p.a,
        k0a: p.k0a,
        atoms: p.atoms,
        theta: p.theta,
    };
    let s = solve_design(&target)?;
    match p.format.unwrap_or(Format::Json) {
        Format::Json => {
            // the input parameters sit at the top level so that this file is
            // itself a valid design config
            let mut doc = serde_json::to_value(p)?;
            doc["schema_version"] = json!(SCHEMA_VERSION);
            doc["command"] = json!("design");
            doc["solution"] = serde_json::to_value(&s)?;
            to_json(&doc)
        }
        Format::Csv => {
            let mut t = Table::new(&[
                "gamma_target",
                "delta_target",
                "xi",
                "chi_max",
                "d",
                "alpha",
                "epsilon",
                "strength_re",
                "strength_im",
                "k0a",
                "atoms",
                "side",
                "atoms_exact",
                "k",
                "free",
                "residual_gamma",
                "residual_delta",
                "residual_gamma_exact",
                "residual_delta_exact",
                "sensitivity",
            ]);
            t.push(vec![
                s.gamma_target.into(),
                s.delta_target.into(),
                s.xi.into(),
                s.chi_max.into(),
                (s.dim.get() as i64).into(),
                s.alpha.into(),
                (s.epsilon.as_f64() as i64).into(),
                s.strength.re.into(),
                s.strength.im.into(),
                s.k0a.into(),
                s.atoms.into(),
                s.side.map(|m| m.to_string()).unwrap_or_default().into(),
                s.atoms_exact.into(),
                s.k.into(),
                format!("{:?}", s.free).to_lowercase().into(),
                s.residuals.gamma.into(),
                s.residuals.delta.into(),
                s.residuals_exact.gamma.into(),
                s.residuals_exact.delta.into(),
                s.sensitivity.into(),
            ]);
            t.to_csv()
        }
    }
}
