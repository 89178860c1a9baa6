//! Pairwise radiative coupling and the collective coupling matrix.
//!
//! The pair coupling between atoms a distance `r` apart is
//! `A sin^2(theta) exp(i eps k0 r) / (k0 r)^alpha`, with `theta` the angle
//! between the separation and the x3 dipole axis. For chains and planar
//! lattices the separation lies in the x1-x2 plane, so `sin^2(theta) = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dimension_constants, norm3, Dimension, LatticePosition, StrengthConstraint};
use crate::matrix::ComplexMatrix;

/// Default cap on the number of atoms for dense matrices.
pub const DEFAULT_MAX_ATOMS: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = Error;
    fn try_from(v: i32) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidArgument(format!("phase sign must be +1 or -1, got {other}"))),
        }
    }
}

impl From<Sign> for i32 {
    fn from(s: Sign) -> i32 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One power-law coupling term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingModel {
    dim: Dimension,
    strength: Complex64,
    alpha: f64,
    epsilon: Sign,
    /// Constant phase applied to every pair coupling. Planar lattices use
    /// `-eps pi/4` to cancel the far-field phase of the angular Bessel
    /// integral, which the continuum description absorbs into a real `A_2`.
    far_field_phase: f64,
    custom: bool,
}

impl CouplingModel {
    /// Coupling whose strength must obey the per-dimension constraint
    /// (real and non-negative for d = 1, 2; imaginary with Im <= 0 for d = 3).
    pub fn new(dim: Dimension, strength: Complex64, alpha: f64, epsilon: Sign) -> Result<Self> {
        let model = Self::custom(dim, strength, alpha, epsilon)?;
        check_strength(dim, strength)?;
        Ok(Self { custom: false, ..model })
    }

    /// Like [`CouplingModel::new`] but with an unconstrained complex strength.
    pub fn custom(dim: Dimension, strength: Complex64, alpha: f64, epsilon: Sign) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::NegativeAlpha(alpha));
        }
        if !(strength.re.is_finite() && strength.im.is_finite()) {
            return Err(Error::InvalidArgument("coupling strength must be finite".into()));
        }
        Ok(Self {
            dim,
            strength,
            alpha,
            epsilon,
            far_field_phase: 0.0,
            custom: true,
        })
    }

    /// The conventional realisation for each dimension with strength `|A|`:
    /// chains use `A = |A|`, planar lattices `A = |A|` with the far-field
    /// phase compensation, cubic lattices `A = -i|A|`. All use `eps = +1`.
    pub fn standard(dim: Dimension, magnitude: f64, alpha: f64) -> Result<Self> {
        if !(magnitude >= 0.0) {
            return Err(Error::InvalidArgument(format!("strength magnitude must be >= 0, got {magnitude}")));
        }
        let strength = match dim {
            Dimension::One | Dimension::Two => Complex64::new(magnitude, 0.0),
            Dimension::Three => Complex64::new(0.0, -magnitude),
        };
        let model = Self::new(dim, strength, alpha, Sign::Plus)?;
        Ok(model.with_far_field_phase(default_far_field_phase(dim, Sign::Plus)))
    }

    pub fn with_far_field_phase(self, phase: f64) -> Self {
        Self {
            far_field_phase: phase,
            ..self
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn strength(&self) -> Complex64 {
        self.strength
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn far_field_phase(&self) -> f64 {
        self.far_field_phase
    }

    pub fn is_custom(&self) -> bool {
        self.custom
    }

    /// Same model with the opposite phase sign (and the matching far-field phase).
    pub fn with_epsilon(self, epsilon: Sign) -> Self {
        let flip = epsilon != self.epsilon;
        Self {
            epsilon,
            far_field_phase: if flip { -self.far_field_phase } else { self.far_field_phase },
            ..self
        }
    }

    /// Coupling for a separation vector `sep` (units `1/k0`).
    pub fn evaluate(&self, sep: [f64; 3]) -> Result<Complex64> {
        let r = norm3(sep);
        if r == 0.0 {
            return Err(Error::CoincidentSites);
        }
        let angular = match self.dim {
            Dimension::Three => {
                let cos = sep[2] / r;
                1.0 - cos * cos
            }
            _ => 1.0,
        };
        let phase = self.epsilon.as_f64() * r + self.far_field_phase;
        Ok(self.strength * angular * Complex64::from_polar(1.0, phase) / r.powf(self.alpha))
    }
}

/// Far-field phase used by [`CouplingModel::standard`].
pub fn default_far_field_phase(dim: Dimension, epsilon: Sign) -> f64 {
    match dim {
        Dimension::Two => -epsilon.as_f64() * PI / 4.0,
        _ => 0.0,
    }
}

fn check_strength(dim: Dimension, a: Complex64) -> Result<()> {
    let constraint = dimension_constants(dim, Some(PI / 2.0))?.strength;
    let ok = match constraint {
        StrengthConstraint::RealNonNegative => a.im == 0.0 && a.re >= 0.0,
        StrengthConstraint::ImaginaryNonPositive => a.re == 0.0 && a.im <= 0.0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::StrengthConstraint {
            dim: dim.get(),
            re: a.re,
            im: a.im,
            constraint: constraint.describe(),
        })
    }
}

/// Single-atom self term `V0 = gamma0 + 2i delta_omega0` with `gamma0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleAtomTerm {
    pub delta_omega0: f64,
}

impl SingleAtomTerm {
    pub const GAMMA0: f64 = 1.0;

    pub fn new(delta_omega0: f64) -> Self {
        Self { delta_omega0 }
    }

    pub fn v0(&self) -> Complex64 {
        Complex64::new(Self::GAMMA0, 2.0 * self.delta_omega0)
    }
}

impl Default for SingleAtomTerm {
    fn default() -> Self {
        Self::new(0.0)
    }
}

/// Summed coupling of all terms between two sites.
pub fn pair_coupling(ri: &LatticePosition, rj: &LatticePosition, models: &[CouplingModel]) -> Result<Complex64> {
    let sep = ri.separation(rj);
    models.iter().map(|m| m.evaluate(sep)).sum()
}

pub fn coupling_matrix(
    lattice: &[LatticePosition],
    models: &[CouplingModel],
    self_term: SingleAtomTerm,
) -> Result<ComplexMatrix> {
    coupling_matrix_with_limit(lattice, models, self_term, DEFAULT_MAX_ATOMS)
}

pub fn coupling_matrix_with_limit(
    lattice: &[LatticePosition],
    models: &[CouplingModel],
    self_term: SingleAtomTerm,
    max_atoms: usize,
) -> Result<ComplexMatrix> {
    let n = lattice.len();
    if n > max_atoms {
        return Err(Error::TooManyAtoms { atoms: n, limit: max_atoms });
    }
    let v0 = self_term.v0();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ok(v0)
                    } else {
                        pair_coupling(&lattice[i], &lattice[j], models)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexMatrix::from_rows(n, n, rows.into_iter().flatten().collect()))
}

/// Small-volume limit: every entry equals `V0`.
pub fn dicke_matrix(atoms: i64, self_term: SingleAtomTerm) -> Result<ComplexMatrix> {
    if atoms <= 0 {
        return Err(Error::InvalidArgument(format!("atom count must be positive, got {atoms}")));
    }
    let n = atoms as usize;
    if n > DEFAULT_MAX_ATOMS {
        return Err(Error::TooManyAtoms { atoms: n, limit: DEFAULT_MAX_ATOMS });
    }
    let v0 = self_term.v0();
    Ok(ComplexMatrix::from_fn(n, n, |_, _| v0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, LatticeSpec};

    fn site(dim: Dimension, idx: &[i32], k0a: f64) -> LatticePosition {
        LatticePosition::new(dim, idx, k0a)
    }

    fn chain_model(alpha: f64) -> CouplingModel {
        CouplingModel::new(Dimension::One, Complex64::new(1.0, 0.0), alpha, Sign::Plus).unwrap()
    }

    #[test]
    fn half_wave_separation_gives_minus_one() {
        let v = pair_coupling(
            &site(Dimension::One, &[0], PI),
            &site(Dimension::One, &[1], PI),
            &[chain_model(0.0)],
        )
        .unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn separation_along_dipole_axis_decouples() {
        let m = CouplingModel::standard(Dimension::Three, 1.5, 1.0).unwrap();
        let v = pair_coupling(
            &site(Dimension::Three, &[0, 0, 0], 3.0),
            &site(Dimension::Three, &[0, 0, 2], 3.0),
            &[m],
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn one_wavelength_with_square_root_decay() {
        let v = pair_coupling(
            &site(Dimension::One, &[0], 2.0 * PI),
            &site(Dimension::One, &[1], 2.0 * PI),
            &[chain_model(0.5)],
        )
        .unwrap();
        // 1/sqrt(2 pi) = 0.398942280401432677...
        assert!((v.re - 0.398_942_280_401_432_7).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn coincident_sites_are_rejected() {
        let s = site(Dimension::One, &[1], 3.0);
        assert_eq!(pair_coupling(&s, &s, &[chain_model(0.0)]), Err(Error::CoincidentSites));
    }

    #[test]
    fn strength_constraints() {
        assert!(CouplingModel::new(Dimension::One, Complex64::new(-1.0, 0.0), 0.0, Sign::Plus).is_err());
        assert!(CouplingModel::new(Dimension::Two, Complex64::new(1.0, 0.1), 0.0, Sign::Plus).is_err());
        assert!(CouplingModel::new(Dimension::Three, Complex64::new(0.0, 1.0), 1.0, Sign::Plus).is_err());
        assert!(CouplingModel::new(Dimension::Three, Complex64::new(0.0, -1.0), 1.0, Sign::Plus).is_ok());
        let custom = CouplingModel::custom(Dimension::One, Complex64::new(0.3, -0.2), 0.0, Sign::Plus).unwrap();
        assert!(custom.is_custom());
        assert_eq!(
            CouplingModel::new(Dimension::One, Complex64::new(1.0, 0.0), -0.1, Sign::Plus),
            Err(Error::NegativeAlpha(-0.1))
        );
    }

    #[test]
    fn matrix_entries() {
        let spec = LatticeSpec::new(1, 3.0, 4).unwrap();
        let lattice = build_lattice(&spec);
        let term = SingleAtomTerm::new(0.25);
        let m = coupling_matrix(&lattice, &[chain_model(0.0)], term).unwrap();
        // sites -1, 0: one lattice spacing apart
        assert!((m[(1, 2)] - Complex64::from_polar(1.0, 3.0)).norm() < 1e-15);
        for i in 0..4 {
            assert_eq!(m[(i, i)], Complex64::new(1.0, 0.5));
        }
        assert_eq!(m.asymmetry(), 0.0);
    }

    #[test]
    fn two_site_matrix_is_symmetric() {
        let spec = LatticeSpec::new(1, 4.2, 2).unwrap();
        let m = coupling_matrix(&build_lattice(&spec), &[chain_model(0.7)], SingleAtomTerm::default()).unwrap();
        assert_eq!(m[(0, 1)], m[(1, 0)]);
    }

    #[test]
    fn terms_add_linearly() {
        let a = chain_model(0.0);
        let b = chain_model(1.0);
        let (p, q) = (site(Dimension::One, &[0], 3.0), site(Dimension::One, &[3], 3.0));
        let sum = pair_coupling(&p, &q, &[a, b]).unwrap();
        let parts = pair_coupling(&p, &q, &[a]).unwrap() + pair_coupling(&p, &q, &[b]).unwrap();
        assert!((sum - parts).norm() < 1e-15);
    }

    #[test]
    fn dicke_entries_and_errors() {
        let term = SingleAtomTerm::new(0.1);
        let one = dicke_matrix(1, term).unwrap();
        assert_eq!(one[(0, 0)], term.v0());
        let three = dicke_matrix(3, term).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| three[(i, j)] == term.v0())));
        assert!(dicke_matrix(0, term).is_err());
        assert!(dicke_matrix(-4, term).is_err());
    }

    #[test]
    fn atom_cap_is_enforced() {
        let spec = LatticeSpec::new(2, 3.0, 4).unwrap();
        let err = coupling_matrix_with_limit(&build_lattice(&spec), &[chain_model(0.0)], SingleAtomTerm::default(), 10);
        assert_eq!(err, Err(Error::TooManyAtoms { atoms: 16, limit: 10 }));
    }

    #[test]
    fn planar_preset_compensates_far_field_phase() {
        let m = CouplingModel::standard(Dimension::Two, 1.0, 0.5).unwrap();
        assert_eq!(m.far_field_phase(), -PI / 4.0);
        assert_eq!(m.with_epsilon(Sign::Minus).far_field_phase(), PI / 4.0);
        assert_eq!(CouplingModel::standard(Dimension::One, 1.0, 0.0).unwrap().far_field_phase(), 0.0);
    }
}
