//! Continuum theory of the collective decay rate and shift near `k = k0`.

pub mod closed_form;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use closed_form::{
    beta_zero_j, closed_form_raw, evaluate_j, off_resonant_j, quadrature_j, relative_difference, resonant_j, JEvaluation, JKind,
    JSource, RadialIntegral,
};

use crate::coupling::{CouplingModel, Sign};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, dimension_constants, Dimension, DimensionConstants, Kernel, LatticeSpec, Wavevector};
use crate::specfun::{brent_root, cosc_m1, golden_section_max, golden_section_min, sinc};
use crate::spectrum::SiteCouplings;

/// Below this atom count the continuum description is not trusted.
pub const MIN_CONTINUUM_ATOMS: f64 = 100.0;

/// `0 <= alpha < (d+1)/2`, the necessary condition for superradiance.
pub fn superradiance_constraint(dim: Dimension, alpha: f64) -> Result<bool> {
    if !(alpha >= 0.0) {
        return Err(Error::NegativeAlpha(alpha));
    }
    Ok(alpha < 0.5 * (dim.as_f64() + 1.0))
}

fn require_constraint(dim: Dimension, alpha: f64) -> Result<()> {
    if superradiance_constraint(dim, alpha)? {
        Ok(())
    } else {
        Err(Error::ConstraintViolated { dim: dim.get(), alpha })
    }
}

/// Parameters of the continuum description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticContext {
    dim: Dimension,
    alpha: f64,
    epsilon: Sign,
    strength: Complex64,
    k0a: f64,
    atoms: f64,
    theta: f64,
    constants: DimensionConstants,
}

impl AnalyticContext {
    pub fn new(
        dim: Dimension,
        alpha: f64,
        epsilon: Sign,
        strength: Complex64,
        k0a: f64,
        atoms: f64,
        theta: Option<f64>,
    ) -> Result<Self> {
        if !(alpha >= 0.0) {
            return Err(Error::NegativeAlpha(alpha));
        }
        if !(k0a > 1.0) || !k0a.is_finite() {
            return Err(Error::LatticeConstantTooSmall(k0a));
        }
        if !(atoms >= 1.0) || !atoms.is_finite() {
            return Err(Error::InvalidArgument(format!("atom count must be >= 1, got {atoms}")));
        }
        if !(strength.re.is_finite() && strength.im.is_finite()) {
            return Err(Error::InvalidArgument("coupling strength must be finite".into()));
        }
        let constants = dimension_constants(dim, theta)?;
        Ok(Self {
            dim,
            alpha,
            epsilon,
            strength,
            k0a,
            atoms,
            theta: theta.unwrap_or(FRAC_PI_2),
            constants,
        })
    }

    /// Context matching [`CouplingModel::standard`] with wavevector normal to the dipoles.
    pub fn standard(dim: Dimension, magnitude: f64, alpha: f64, k0a: f64, atoms: f64) -> Result<Self> {
        let model = CouplingModel::standard(dim, magnitude, alpha)?;
        Self::for_model(&model, k0a, atoms, Some(FRAC_PI_2))
    }

    pub fn for_model(model: &CouplingModel, k0a: f64, atoms: f64, theta: Option<f64>) -> Result<Self> {
        let theta = match model.dim() {
            Dimension::Three => theta,
            _ => None,
        };
        Self::new(model.dim(), model.alpha(), model.epsilon(), model.strength(), k0a, atoms, theta)
    }

    pub fn for_lattice(spec: &LatticeSpec, model: &CouplingModel, theta: Option<f64>) -> Result<Self> {
        Self::for_model(model, spec.k0a(), spec.atom_count() as f64, theta)
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn strength(&self) -> Complex64 {
        self.strength
    }

    pub fn k0a(&self) -> f64 {
        self.k0a
    }

    pub fn atoms(&self) -> f64 {
        self.atoms
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn constants(&self) -> DimensionConstants {
        self.constants
    }

    /// `beta = (d-1)/2 - alpha`.
    pub fn beta(&self) -> f64 {
        0.5 * (self.dim.as_f64() - 1.0) - self.alpha
    }

    /// `(d+1)/2 - alpha`, the growth exponent of `chi_max` in `N^(1/d)`.
    pub fn growth_exponent(&self) -> f64 {
        0.5 * (self.dim.as_f64() + 1.0) - self.alpha
    }

    /// `N' = b_d N^(1/d)`.
    pub fn nprime(&self) -> f64 {
        self.constants.b * self.atoms.powf(1.0 / self.dim.as_f64())
    }

    /// `a b_d N^(1/d)` in units of `1/k0`, the factor between `k - k0` and `xi`.
    pub fn xi_scale(&self) -> f64 {
        self.k0a * self.nprime()
    }

    pub fn xi(&self, k: f64) -> f64 {
        (k - 1.0) * self.xi_scale()
    }

    pub fn k_of_xi(&self, xi: f64) -> f64 {
        1.0 + xi / self.xi_scale()
    }

    /// Half-width `pi / (a b_d N^(1/d))` of the window around `k0` where the
    /// continuum description applies.
    pub fn window_half_width(&self) -> f64 {
        PI / self.xi_scale()
    }

    pub fn radial_integral(&self) -> Result<RadialIntegral> {
        RadialIntegral::from_lattice(self.beta(), self.k0a, self.nprime())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.atoms < MIN_CONTINUUM_ATOMS {
            out.push(format!("N = {} is below {MIN_CONTINUUM_ATOMS}; the continuum description is unreliable", self.atoms));
        }
        if !superradiance_constraint(self.dim, self.alpha).unwrap_or(false) {
            out.push(format!("alpha = {} violates 0 <= alpha < (d+1)/2", self.alpha));
        }
        out
    }
}

/// `1 + |A| c b^p / p * (k0a)^((1-d)/2 - alpha) * N^(p/d)` with `p = (d+1)/2 - alpha`.
pub fn chi_max(ctx: &AnalyticContext) -> Result<f64> {
    require_constraint(ctx.dim, ctx.alpha)?;
    let p = ctx.growth_exponent();
    let d = ctx.dim.as_f64();
    let c = ctx.constants;
    Ok(1.0 + ctx.strength.norm() * c.c * c.b.powf(p) / p * ctx.k0a.powf(0.5 * (1.0 - d) - ctx.alpha) * ctx.atoms.powf(p / d))
}

/// `L_d(alpha) = 2 b^p c / (d + 1 - 2 alpha) * |A| / (2 pi)^((d-1)/2 + alpha)`.
pub fn l_d(dim: Dimension, alpha: f64, magnitude: f64, theta: Option<f64>) -> Result<f64> {
    require_constraint(dim, alpha)?;
    let c = dimension_constants(dim, theta)?;
    let d = dim.as_f64();
    let p = 0.5 * (d + 1.0) - alpha;
    let q = 0.5 * (d - 1.0) + alpha;
    Ok(2.0 * c.b.powf(p) * c.c / (d + 1.0 - 2.0 * alpha) * magnitude / (2.0 * PI).powf(q))
}

/// `chi_max` in the volume/number/density parameterisations, with sample
/// volume `V = N a^d`, density `rho = N / V` and `lambda0 = 2 pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiMaxForms {
    pub direct: f64,
    pub number_volume: f64,
    pub volume_density: f64,
    pub number_density: f64,
}

pub fn chi_max_forms(ctx: &AnalyticContext) -> Result<ChiMaxForms> {
    let d = ctx.dim.as_f64();
    let l = l_d(ctx.dim, ctx.alpha, ctx.strength.norm(), Some(ctx.theta))?;
    let q = 0.5 * (d - 1.0) + ctx.alpha;
    let lambda0 = 2.0 * PI;
    let n = ctx.atoms;
    let volume = n * ctx.k0a.powf(d);
    let rho = n / volume;
    let edge = volume.powf(1.0 / d);
    Ok(ChiMaxForms {
        direct: chi_max(ctx)?,
        number_volume: 1.0 + l * (lambda0 / edge).powf(q) * n,
        volume_density: 1.0 + l * (lambda0 / edge).powf(q) * volume * rho,
        number_density: 1.0 + l * (lambda0 * rho.powf(1.0 / d)).powf(q) * n.powf(1.0 / d).powf(0.5 * (d + 1.0) - ctx.alpha),
    })
}

/// Finite-size rate curve `1 + (chi_max - 1) sinc(xi)`.
pub fn chi_of_xi(xi: f64, chi_max: f64) -> f64 {
    1.0 + (chi_max - 1.0) * sinc(xi)
}

/// Finite-size shift curve `eps (chi_max - 1)/2 (cos xi - 1)/xi`.
pub fn shift_of_xi(xi: f64, chi_max: f64, epsilon: Sign) -> f64 {
    epsilon.as_f64() * 0.5 * (chi_max - 1.0) * cosc_m1(xi)
}

/// Rescaled rate `(chi - 1)/(chi_max - 1) = sinc(xi)`.
pub fn chi_hat(xi: f64) -> f64 {
    sinc(xi)
}

/// Rescaled shift `shift / (eps (chi_max - 1)) = (cos xi - 1)/(2 xi)`.
pub fn shift_hat(xi: f64) -> f64 {
    0.5 * cosc_m1(xi)
}

/// Positive root `h` of `xi sin xi + cos xi - 1 = 0` in `(pi/2, pi)`, where
/// the shift curve has its extrema (equivalently `tan(h/2) = h`).
pub fn find_offset_h() -> f64 {
    brent_root(|x| x * x.sin() + x.cos() - 1.0, FRAC_PI_2, PI, 1e-15).expect("root is bracketed")
}

/// Azimuth in the x1-x2 plane along which the lattice half-extent `m a / 2`
/// reaches the radius `a b_d N^(1/d)` of the continuum integration region.
pub fn matched_azimuth(dim: Dimension) -> f64 {
    let b = dimension_constants(dim, Some(FRAC_PI_2)).map(|c| c.b).unwrap_or(0.5);
    (0.5 / b).clamp(-1.0, 1.0).acos()
}

/// Default wavevector `(theta, azimuth)` used for scans and comparisons.
pub fn default_direction(dim: Dimension) -> (f64, f64) {
    (FRAC_PI_2, matched_azimuth(dim))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuumResult {
    pub k: f64,
    pub xi: f64,
    pub i_d: Complex64,
    pub chi: f64,
    pub shift: f64,
    pub window_half_width: f64,
    pub in_window: bool,
    pub parts: [JEvaluation; 2],
    pub flagged: bool,
    pub warnings: Vec<String>,
}

/// `I_d = 2 c / (k0a)^d * k^(-(d-1)/2) * A * J_d(k)`, with
/// `J_d = J_cc + i eps J_sc` for the cosine kernel and `J_cs + i eps J_ss` for the sine kernel.
pub fn continuum_i(ctx: &AnalyticContext, k: f64) -> Result<ContinuumResult> {
    require_constraint(ctx.dim, ctx.alpha)?;
    let ri = ctx.radial_integral()?;
    let (re_kind, im_kind) = match ctx.constants.kernel {
        Kernel::Cosine => (JKind::Cc, JKind::Sc),
        Kernel::Sine => (JKind::Cs, JKind::Ss),
    };
    let a = evaluate_j(re_kind, &ri, k)?;
    let b = evaluate_j(im_kind, &ri, k)?;
    let j = Complex64::new(a.value, ctx.epsilon.as_f64() * b.value);
    let d = ctx.dim.as_f64();
    let i_d = 2.0 * ctx.constants.c / ctx.k0a.powf(d) * k.powf(-0.5 * (d - 1.0)) * ctx.strength * j;
    let half = ctx.window_half_width();
    let in_window = (k - 1.0).abs() <= half;
    let mut warnings = ctx.warnings();
    if !in_window {
        warnings.push(format!("k = {k} lies outside the continuum window |k - k0| <= {half:.3e}"));
    }
    Ok(ContinuumResult {
        k,
        xi: ctx.xi(k),
        i_d,
        chi: 1.0 + i_d.re,
        shift: 0.5 * i_d.im,
        window_half_width: half,
        in_window,
        parts: [a, b],
        flagged: a.flagged || b.flagged,
        warnings,
    })
}

/// Whether `Re I_d(k0) >= 0`, i.e. the chosen sign conventions make the
/// resonant mode superradiant.
pub fn superradiant_at_resonance(ctx: &AnalyticContext) -> Result<bool> {
    Ok(continuum_i(ctx, 1.0)?.i_d.re >= 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub expected: f64,
    /// `(N, chi(k0) - 1)` from lattice sums.
    pub samples: Vec<(f64, f64)>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in samples {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Fits the growth of the resonant lattice-sum enhancement with `N` and
/// compares it with `((d+1)/2 - alpha)/d`.
pub fn scaling_exponent_check(dim: Dimension, alpha: f64, sides: &[i64], k0a: f64, magnitude: f64) -> Result<ScalingFit> {
    require_constraint(dim, alpha)?;
    let d = dim.as_f64();
    let atoms: Vec<f64> = sides.iter().map(|&m| (m as f64).powf(d)).collect();
    let (lo, hi) = atoms.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &n| (lo.min(n), hi.max(n)));
    if sides.len() < 3 || hi < 10.0 * lo {
        return Err(Error::InvalidArgument("scaling fit needs at least 3 sizes spanning a decade in N".into()));
    }
    let model = CouplingModel::standard(dim, magnitude, alpha)?;
    let (theta, azimuth) = default_direction(dim);
    let samples = sides
        .iter()
        .map(|&m| {
            let spec = LatticeSpec::new(dim.get(), k0a, m)?;
            let sites = SiteCouplings::new(&build_lattice(&spec), &[model])?;
            let p = sites.point(&Wavevector::new(1.0, theta, azimuth));
            Ok((spec.atom_count() as f64, p.chi - 1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    if samples.iter().any(|&(_, y)| !(y > 0.0)) {
        return Err(Error::InvalidArgument("resonant enhancement is not positive; cannot fit a power law".into()));
    }
    Ok(ScalingFit {
        slope: log_log_slope(&samples),
        expected: (0.5 * (d + 1.0) - alpha) / d,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapsePoint {
    pub xi: f64,
    pub k: f64,
    pub chi_hat: f64,
    pub shift_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseReport {
    pub dim: u32,
    pub alpha: f64,
    pub side: i64,
    pub k0a: f64,
    /// Lattice-sum `chi` at `k0`, used to rescale.
    pub chi_resonant: f64,
    /// Continuum prediction for the same quantity.
    pub chi_max: f64,
    /// Rescaled shift at `k0`.
    pub shift_hat_resonant: f64,
    pub sup_chi_error: f64,
    pub sup_shift_error: f64,
    pub points: Vec<CollapsePoint>,
}

/// Rescaled lattice-sum dispersion over `|xi| <= xi_max`, compared with the
/// universal curves `sinc(xi)` and `(cos xi - 1)/(2 xi)`.
pub fn universal_collapse(
    dim: Dimension,
    alpha: f64,
    side: i64,
    k0a: f64,
    magnitude: f64,
    xi_max: f64,
    points: usize,
) -> Result<CollapseReport> {
    let spec = LatticeSpec::new(dim.get(), k0a, side)?;
    let model = CouplingModel::standard(dim, magnitude, alpha)?;
    let ctx = AnalyticContext::for_lattice(&spec, &model, Some(FRAC_PI_2))?;
    let sites = SiteCouplings::new(&build_lattice(&spec), &[model])?;
    let (theta, azimuth) = default_direction(dim);
    let resonant = sites.point(&Wavevector::new(1.0, theta, azimuth));
    let scale = resonant.chi - 1.0;
    let eps = model.epsilon().as_f64();
    let xis = crate::spectrum::k_grid(-xi_max, xi_max, points)?;
    let pts: Vec<CollapsePoint> = xis
        .par_iter()
        .map(|&xi| {
            let k = ctx.k_of_xi(xi);
            let p = sites.point(&Wavevector::new(k, theta, azimuth));
            CollapsePoint {
                xi,
                k,
                chi_hat: (p.chi - 1.0) / scale,
                shift_hat: p.shift / (eps * scale),
            }
        })
        .collect();
    let sup_chi_error = pts.iter().map(|p| (p.chi_hat - chi_hat(p.xi)).abs()).fold(0.0, f64::max);
    let sup_shift_error = pts.iter().map(|p| (p.shift_hat - shift_hat(p.xi)).abs()).fold(0.0, f64::max);
    Ok(CollapseReport {
        dim: dim.get(),
        alpha,
        side,
        k0a,
        chi_resonant: resonant.chi,
        chi_max: chi_max(&ctx)?,
        shift_hat_resonant: resonant.shift / (eps * scale),
        sup_chi_error,
        sup_shift_error,
        points: pts,
    })
}

/// Locations `(xi_min, xi_max)` of the lattice-sum shift extremum on the
/// positive and negative side of resonance.
pub fn lattice_shift_extrema(dim: Dimension, alpha: f64, side: i64, k0a: f64, magnitude: f64) -> Result<(f64, f64)> {
    let spec = LatticeSpec::new(dim.get(), k0a, side)?;
    let model = CouplingModel::standard(dim, magnitude, alpha)?;
    let ctx = AnalyticContext::for_lattice(&spec, &model, Some(FRAC_PI_2))?;
    let sites = SiteCouplings::new(&build_lattice(&spec), &[model])?;
    let (theta, azimuth) = default_direction(dim);
    let shift = |xi: f64| sites.point(&Wavevector::new(ctx.k_of_xi(xi), theta, azimuth)).shift;
    let (pos, _) = golden_section_min(shift, 1.2, 3.3, 1e-9);
    let (neg, _) = golden_section_max(shift, -3.3, -1.2, 1e-9);
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_ctx(atoms: f64) -> AnalyticContext {
        AnalyticContext::standard(Dimension::One, 1.0, 0.0, 3.0, atoms).unwrap()
    }

    #[test]
    fn constraint_cases() {
        assert!(superradiance_constraint(Dimension::Three, 1.0).unwrap());
        assert!(!superradiance_constraint(Dimension::One, 1.0).unwrap());
        assert!(superradiance_constraint(Dimension::Two, 0.99).unwrap());
        assert_eq!(superradiance_constraint(Dimension::One, -0.5), Err(Error::NegativeAlpha(-0.5)));
    }

    #[test]
    fn chain_enhancement_is_one_plus_half_n() {
        assert_eq!(chi_max(&chain_ctx(2000.0)).unwrap(), 1001.0);
        let other = AnalyticContext::standard(Dimension::One, 1.0, 0.0, 7.3, 64.0).unwrap();
        assert!((chi_max(&other).unwrap() - 33.0).abs() < 1e-12);
        let bad = AnalyticContext::standard(Dimension::One, 1.0, 1.0, 3.0, 64.0).unwrap();
        assert_eq!(chi_max(&bad), Err(Error::ConstraintViolated { dim: 1, alpha: 1.0 }));
    }

    #[test]
    fn prefactor_values() {
        assert!((l_d(Dimension::One, 0.0, 1.0, None).unwrap() - 0.5).abs() < 1e-15);
        let one = l_d(Dimension::Two, 0.5, 1.0, None).unwrap();
        let two = l_d(Dimension::Two, 0.5, 2.0, None).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
        assert_eq!(l_d(Dimension::Three, 1.0, 1.0, Some(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn parameterisations_agree() {
        let ctx = AnalyticContext::standard(Dimension::Three, 0.7, 1.0, 4.2, 27_000.0).unwrap();
        let f = chi_max_forms(&ctx).unwrap();
        for v in [f.number_volume, f.volume_density, f.number_density] {
            assert!(((v - f.direct) / (f.direct - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn finite_size_curves() {
        assert_eq!(chi_of_xi(0.0, 50.0), 50.0);
        assert_eq!(shift_of_xi(0.0, 50.0, Sign::Plus), 0.0);
        assert!((chi_of_xi(PI, 50.0) - 1.0).abs() < 1e-14);
        let h = find_offset_h();
        let d = 1e-4;
        let slope = (shift_of_xi(h + d, 50.0, Sign::Plus) - shift_of_xi(h - d, 50.0, Sign::Plus)) / (2.0 * d);
        assert!(slope.abs() < 1e-8 * 49.0);
        assert_eq!(shift_of_xi(1.3, 20.0, Sign::Minus), -shift_of_xi(1.3, 20.0, Sign::Plus));
    }

    #[test]
    fn offset_h() {
        let h = find_offset_h();
        assert!((2.3310..=2.3312).contains(&h));
        assert!(((h / 2.0).tan() - h).abs() < 1e-10);
        assert!((h - 2.331_122_370_414_422_6).abs() < 1e-12);
    }

    #[test]
    fn pythagorean_identity_of_the_curves() {
        for i in -300..=300 {
            let xi = i as f64 * 0.031;
            let lhs = (xi * chi_hat(xi)).powi(2) + (1.0 + 2.0 * xi * shift_hat(xi)).powi(2);
            assert!((lhs - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn continuum_matches_enhancement_at_resonance() {
        let ctx = chain_ctx(1e6);
        let r = continuum_i(&ctx, 1.0).unwrap();
        let cm = chi_max(&ctx).unwrap();
        assert!(((r.chi - 1.0) / (cm - 1.0) - 1.0).abs() < 1e-2);
        assert!(r.shift.abs() < 1e-6 * (cm - 1.0));
        assert!(r.in_window);
        assert!(superradiant_at_resonance(&ctx).unwrap());
    }

    #[test]
    fn three_dimensional_preset_is_superradiant() {
        let ctx = AnalyticContext::standard(Dimension::Three, 1.0, 1.0, 3.0, 1e6).unwrap();
        assert!(superradiant_at_resonance(&ctx).unwrap());
        let r = continuum_i(&ctx, 1.0).unwrap();
        let cm = chi_max(&ctx).unwrap();
        assert!(((r.chi - 1.0) / (cm - 1.0) - 1.0).abs() < 5e-2);
    }

    #[test]
    fn window_warning() {
        let ctx = chain_ctx(2000.0);
        let r = continuum_i(&ctx, 1.0 + 2.0 * ctx.window_half_width()).unwrap();
        assert!(!r.in_window);
        assert!(!r.warnings.is_empty());
        let small = chain_ctx(50.0);
        assert!(!small.warnings().is_empty());
    }

    #[test]
    fn continuum_tracks_chain_lattice_sum() {
        let spec = LatticeSpec::new(1, 3.0, 2000).unwrap();
        let model = CouplingModel::standard(Dimension::One, 1.0, 0.0).unwrap();
        let ctx = AnalyticContext::for_lattice(&spec, &model, None).unwrap();
        let sites = SiteCouplings::new(&build_lattice(&spec), &[model]).unwrap();
        let scale = chi_max(&ctx).unwrap() - 1.0;
        for i in -20..=20 {
            let xi = i as f64 * PI / 20.0;
            let k = ctx.k_of_xi(xi);
            let lat = sites.point(&Wavevector::chain(k));
            let cont = continuum_i(&ctx, k).unwrap();
            assert!(((lat.chi - 1.0) - (cont.chi - 1.0)).abs() < 0.05 * scale, "xi={xi}");
        }
    }

    #[test]
    fn matched_azimuths() {
        assert_eq!(matched_azimuth(Dimension::One), 0.0);
        assert!((matched_azimuth(Dimension::Two) - crate::lattice::equal_area_azimuth()).abs() < 1e-15);
    }

    #[test]
    fn slope_of_exact_power_law() {
        let s: Vec<(f64, f64)> = [10.0, 100.0, 1000.0].iter().map(|&x: &f64| (x, 3.0 * x.powf(0.75))).collect();
        assert!((log_log_slope(&s) - 0.75).abs() < 1e-12);
    }
}
