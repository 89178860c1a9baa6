//! Inverse design: lattice and coupling parameters for a target collective
//! decay rate and shift, plus the scaling transformation between samples.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytics::{chi_max, chi_of_xi, shift_of_xi, superradiance_constraint, AnalyticContext, MIN_CONTINUUM_ATOMS};
use crate::coupling::{CouplingModel, Sign};
use crate::error::{Error, Result};
use crate::lattice::{dimension_constants, Dimension};
use crate::specfun::sinc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeParameter {
    Atoms,
    K0a,
    Strength,
}

/// Target rate and shift together with the fixed parameters. Exactly one of
/// `magnitude`, `k0a` and `atoms` is left open and solved for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignTarget {
    pub gamma: f64,
    pub delta: f64,
    pub dim: Dimension,
    pub alpha: f64,
    pub epsilon: Option<Sign>,
    /// `|A_d|`.
    pub magnitude: Option<f64>,
    pub k0a: Option<f64>,
    pub atoms: Option<f64>,
    pub theta: Option<f64>,
}

impl DesignTarget {
    /// Target with `N` free.
    pub fn new(gamma: f64, delta: f64, dim: Dimension, alpha: f64, magnitude: f64, k0a: f64) -> Self {
        Self {
            gamma,
            delta,
            dim,
            alpha,
            epsilon: None,
            magnitude: Some(magnitude),
            k0a: Some(k0a),
            atoms: None,
            theta: None,
        }
    }

    pub fn free_parameter(&self) -> Result<FreeParameter> {
        match (self.magnitude.is_none(), self.k0a.is_none(), self.atoms.is_none()) {
            (false, false, true) => Ok(FreeParameter::Atoms),
            (false, true, false) => Ok(FreeParameter::K0a),
            (true, false, false) => Ok(FreeParameter::Strength),
            _ => Err(Error::InvalidArgument(
                "exactly one of the strength |A|, k0a and N must be left free".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub gamma: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSolution {
    pub gamma_target: f64,
    pub delta_target: f64,
    pub xi: f64,
    pub chi_max: f64,
    pub dim: Dimension,
    pub alpha: f64,
    pub epsilon: Sign,
    pub strength: Complex64,
    pub k0a: f64,
    /// Atom count after rounding to an even side length.
    pub atoms: f64,
    pub side: Option<i64>,
    /// Unrounded solution for the atom count.
    pub atoms_exact: f64,
    pub theta: f64,
    /// Wavenumber `k0 + xi / (a b_d N^(1/d))` of the designed mode.
    pub k: f64,
    pub free: FreeParameter,
    /// Forward-model residuals `(Gamma - Gamma*, Delta - Delta*)` before rounding.
    pub residuals_exact: Residuals,
    /// The same after rounding `N`.
    pub residuals: Residuals,
    /// `d chi / d N` at the solution.
    pub sensitivity: f64,
    pub warnings: Vec<String>,
}

/// `xi = -2 eps arctan(2 rho)` for the shift-to-excess-rate ratio `rho`.
pub fn xi_for_ratio(rho: f64, epsilon: Sign) -> f64 {
    // + 0.0 turns -0 into 0
    -2.0 * epsilon.as_f64() * (2.0 * rho).atan() + 0.0
}

/// Shift target that places the design at phase `xi`, the inverse of
/// [`xi_for_ratio`]: `Delta = -eps tan(xi/2)/2 (Gamma - 1)`.
pub fn delta_for_xi(gamma: f64, xi: f64, epsilon: Sign) -> Result<f64> {
    if !xi.is_finite() || xi.abs() >= std::f64::consts::PI {
        return Err(Error::Infeasible(format!(
            "|xi| = {} is outside the superradiant branch |xi| < pi, where sinc(xi) > 0",
            xi.abs()
        )));
    }
    Ok(-epsilon.as_f64() * 0.5 * (0.5 * xi).tan() * (gamma - 1.0))
}

fn enhancement_prefactor(dim: Dimension, alpha: f64, theta: f64) -> Result<(f64, f64)> {
    let c = dimension_constants(dim, Some(theta))?;
    let p = 0.5 * (dim.as_f64() + 1.0) - alpha;
    Ok((c.c * c.b.powf(p) / p, p))
}

// None when the side length is beyond exact integer range.
fn nearest_even_side(atoms: f64, dim: Dimension) -> Option<i64> {
    let half = (0.5 * atoms.powf(1.0 / dim.as_f64())).round();
    (half < 2f64.powi(52)).then(|| (half as i64 * 2).max(2))
}

pub fn solve_design(target: &DesignTarget) -> Result<DesignSolution> {
    let t = *target;
    if !(t.gamma.is_finite() && t.delta.is_finite()) {
        return Err(Error::InvalidArgument("targets must be finite".into()));
    }
    if !(t.gamma > 1.0) {
        return Err(Error::Infeasible(format!(
            "target rate {} is not superradiant; chi_k - 1 vanishes at |xi| = pi and only Gamma* > 1 can be designed",
            t.gamma
        )));
    }
    if !superradiance_constraint(t.dim, t.alpha)? {
        return Err(Error::ConstraintViolated { dim: t.dim.get(), alpha: t.alpha });
    }
    let free = t.free_parameter()?;
    let epsilon = t.epsilon.unwrap_or(Sign::Plus);
    let theta = match t.dim {
        Dimension::Three => t.theta.unwrap_or(FRAC_PI_2),
        _ => FRAC_PI_2,
    };
    let d = t.dim.as_f64();

    let rho = t.delta / (t.gamma - 1.0);
    let xi = xi_for_ratio(rho, epsilon);
    let chi_target = 1.0 + (t.gamma - 1.0) / sinc(xi);

    let (pref, p) = enhancement_prefactor(t.dim, t.alpha, theta)?;
    let e = 0.5 * (1.0 - d) - t.alpha;
    let excess = chi_target - 1.0;
    let (magnitude, k0a, atoms_exact) = match free {
        FreeParameter::Atoms => {
            let (a, k0a) = (t.magnitude.unwrap(), t.k0a.unwrap());
            let n = (excess / (a * pref * k0a.powf(e))).powf(d / p);
            (a, k0a, n)
        }
        FreeParameter::K0a => {
            let (a, n) = (t.magnitude.unwrap(), t.atoms.unwrap());
            if e == 0.0 {
                return Err(Error::Infeasible(
                    "chi_max does not depend on k0a when alpha = (1-d)/2; fix k0a and free N or |A|".into(),
                ));
            }
            let k0a = (excess / (a * pref * n.powf(p / d))).powf(1.0 / e);
            if !(k0a > 1.0) || !k0a.is_finite() {
                return Err(Error::Infeasible(format!("required k0a = {k0a} is not in the extended regime k0a > 1")));
            }
            (a, k0a, n)
        }
        FreeParameter::Strength => {
            let (k0a, n) = (t.k0a.unwrap(), t.atoms.unwrap());
            (excess / (pref * k0a.powf(e) * n.powf(p / d)), k0a, n)
        }
    };
    if !(magnitude > 0.0) || !magnitude.is_finite() {
        return Err(Error::Infeasible(format!("required strength |A| = {magnitude} is not positive and finite")));
    }
    if !atoms_exact.is_finite() {
        return Err(Error::Infeasible(format!("required N = {atoms_exact} is not finite")));
    }
    if atoms_exact < 1.0 {
        return Err(Error::Infeasible(format!("required N = {atoms_exact:.3e} is below one atom")));
    }

    let (atoms, side) = match free {
        FreeParameter::Atoms => {
            match nearest_even_side(atoms_exact, t.dim) {
                Some(m) => ((m as f64).powf(d), Some(m)),
                None => (atoms_exact, None),
            }
        }
        _ => {
            let m = atoms_exact.powf(1.0 / d);
            let side = ((m - m.round()).abs() < 1e-9 && (m.round() as i64) % 2 == 0).then(|| m.round() as i64);
            (atoms_exact, side)
        }
    };

    let model = CouplingModel::standard(t.dim, magnitude, t.alpha)?.with_epsilon(epsilon);
    let forward = |n: f64| -> Result<(f64, Residuals, AnalyticContext)> {
        let ctx = AnalyticContext::for_model(&model, k0a, n, Some(theta))?;
        let cm = chi_max(&ctx)?;
        let res = Residuals {
            gamma: chi_of_xi(xi, cm) - t.gamma,
            delta: shift_of_xi(xi, cm, epsilon) - t.delta,
        };
        Ok((cm, res, ctx))
    };
    let (_, residuals_exact, _) = forward(atoms_exact)?;
    let (cm, residuals, ctx) = forward(atoms)?;

    let mut warnings = Vec::new();
    if free == FreeParameter::Atoms && side.is_none() {
        warnings.push(format!("N = {atoms_exact:e} is too large for an integer side length; no rounding applied"));
    }
    if atoms < MIN_CONTINUUM_ATOMS {
        warnings.push(format!("N = {atoms} is below {MIN_CONTINUUM_ATOMS}; the continuum model behind the design is unreliable"));
    }
    Ok(DesignSolution {
        gamma_target: t.gamma,
        delta_target: t.delta,
        xi,
        chi_max: cm,
        dim: t.dim,
        alpha: t.alpha,
        epsilon,
        strength: model.strength(),
        k0a,
        atoms,
        side,
        atoms_exact,
        theta,
        k: ctx.k_of_xi(xi),
        free,
        residuals_exact,
        residuals,
        sensitivity: (cm - 1.0) * (p / d) / atoms * sinc(xi),
        warnings,
    })
}

/// `chi -> f_N (f_V^(1/d))^((1 - d - 2 alpha)/2) chi` for `N -> f_N N`, `V -> f_V V`.
pub fn transform_chi(chi: f64, f_n: f64, f_v: f64, dim: Dimension, alpha: f64) -> Result<f64> {
    if !(f_n > 0.0 && f_v > 0.0) || !(f_n.is_finite() && f_v.is_finite()) {
        return Err(Error::InvalidArgument(format!("scaling factors must be positive, got f_N = {f_n}, f_V = {f_v}")));
    }
    let d = dim.as_f64();
    Ok(f_n * f_v.powf(1.0 / d).powf(0.5 * (1.0 - d - 2.0 * alpha)) * chi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarAlpha {
    pub alpha_prime: f64,
    pub feasible: bool,
}

/// Exponent `alpha'` in dimension `d'` sharing the scaling behaviour of
/// `alpha` in `d`, from `(alpha - 1/2)/d = (alpha' - 1/2)/d'`.
pub fn similar_alpha(dim: Dimension, alpha: f64, dim_prime: Dimension) -> Result<SimilarAlpha> {
    if !(alpha >= 0.0) {
        return Err(Error::NegativeAlpha(alpha));
    }
    let (d, dp) = (dim.as_f64(), dim_prime.as_f64());
    let alpha_prime = if dim == dim_prime {
        alpha
    } else {
        (d + dp * (2.0 * alpha - 1.0)) / (2.0 * d)
    };
    let feasible = alpha_prime >= 0.0 && alpha_prime < 0.5 * (dp + 1.0);
    Ok(SimilarAlpha { alpha_prime, feasible })
}

/// Whether an extended sample reproduces the Dicke scaling `chi_max ~ N`,
/// which needs `alpha = (1-d)/2 >= 0`.
pub fn dicke_compatible(dim: Dimension, alpha: f64) -> bool {
    let required = 0.5 * (1.0 - dim.as_f64());
    alpha == required && alpha >= 0.0
}
