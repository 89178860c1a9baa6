//! Lattice geometry, unit conventions and the dimension-dependent constants.
//!
//! Everything is dimensionless: rates and shifts are in units of the single
//! atom decay rate, lengths in units of `1/k0`, wavenumbers in units of `k0`.
//! The lattice constant therefore only appears as the product `k0a`.
//!
//! Chains and square lattices lie in the x1-x2 plane; the atomic dipoles point
//! along x3.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Dimension {
    One,
    Two,
    Three,
}

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        match d {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            other => Err(Error::InvalidDimension(other)),
        }
    }

    pub fn get(self) -> u32 {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.get() as f64
    }

    pub fn as_usize(self) -> usize {
        self.get() as usize
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.get()
    }
}

/// A d-dimensional simple cubic lattice with `side` atoms along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSpec {
    dim: Dimension,
    k0a: f64,
    side: u32,
}

impl LatticeSpec {
    pub fn new(d: u32, k0a: f64, side: i64) -> Result<Self> {
        let dim = Dimension::new(d)?;
        if side <= 0 {
            return Err(Error::NonPositiveSideLength(side));
        }
        if side % 2 != 0 {
            return Err(Error::OddSideLength(side));
        }
        if !(k0a > 1.0) || !k0a.is_finite() {
            return Err(Error::LatticeConstantTooSmall(k0a));
        }
        let side = u32::try_from(side).map_err(|_| Error::InvalidArgument(format!("side length {side} too large")))?;
        Ok(Self { dim, k0a, side })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn k0a(&self) -> f64 {
        self.k0a
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn atom_count(&self) -> usize {
        (self.side as usize).pow(self.dim.get())
    }

    /// Index range `-m/2+1 ..= m/2` along each axis.
    pub fn index_range(&self) -> std::ops::RangeInclusive<i32> {
        let half = (self.side / 2) as i32;
        (1 - half)..=half
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticePosition {
    dim: Dimension,
    indices: [i32; 3],
    coords: [f64; 3],
}

impl LatticePosition {
    pub fn new(dim: Dimension, indices: &[i32], k0a: f64) -> Self {
        let mut idx = [0i32; 3];
        let mut coords = [0.0; 3];
        for (axis, &n) in indices.iter().enumerate().take(dim.as_usize()) {
            idx[axis] = n;
            coords[axis] = k0a * n as f64;
        }
        // d = 3 fills x1, x2, x3; lower dimensions stay in the x1-x2 plane.
        Self {
            dim,
            indices: idx,
            coords,
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn indices(&self) -> &[i32] {
        &self.indices[..self.dim.as_usize()]
    }

    /// Cartesian coordinates embedded in 3D, in units of `1/k0`.
    pub fn coords(&self) -> [f64; 3] {
        self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.indices.iter().all(|&n| n == 0)
    }

    pub fn separation(&self, other: &LatticePosition) -> [f64; 3] {
        [
            self.coords[0] - other.coords[0],
            self.coords[1] - other.coords[1],
            self.coords[2] - other.coords[2],
        ]
    }

    pub fn distance(&self, other: &LatticePosition) -> f64 {
        norm3(self.separation(other))
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// All sites of the lattice in lexicographic order of `(n1, ..., nd)`.
pub fn build_lattice(spec: &LatticeSpec) -> Vec<LatticePosition> {
    let d = spec.dim().as_usize();
    let range: Vec<i32> = spec.index_range().collect();
    let m = range.len();
    let mut sites = Vec::with_capacity(spec.atom_count());
    let mut counter = vec![0usize; d];
    let mut idx = vec![0i32; d];
    loop {
        for axis in 0..d {
            idx[axis] = range[counter[axis]];
        }
        sites.push(LatticePosition::new(spec.dim(), &idx, spec.k0a()));
        // odometer, last axis fastest
        let mut axis = d;
        loop {
            if axis == 0 {
                return sites;
            }
            axis -= 1;
            counter[axis] += 1;
            if counter[axis] < m {
                break;
            }
            counter[axis] = 0;
        }
    }
}

/// Wavevector of a collective excitation, in units of `k0`.
///
/// `theta` is the polar angle from the x3 (dipole) axis and `azimuth` the
/// angle in the x1-x2 plane measured from x1. Chains and planar lattices have
/// `theta = pi/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Wavevector {
    k: f64,
    theta: f64,
    azimuth: f64,
    components: [f64; 3],
}

impl Wavevector {
    pub fn new(k: f64, theta: f64, azimuth: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = azimuth.sin_cos();
        Self {
            k,
            theta,
            azimuth,
            components: [k * st * cp, k * st * sp, k * ct],
        }
    }

    /// Along the chain axis x1.
    pub fn chain(k: f64) -> Self {
        Self::new(k, PI / 2.0, 0.0)
    }

    pub fn planar(k: f64, azimuth: f64) -> Self {
        Self::new(k, PI / 2.0, azimuth)
    }

    pub fn from_components(components: [f64; 3]) -> Self {
        let k = norm3(components);
        let theta = if k == 0.0 {
            PI / 2.0
        } else {
            (components[2] / k).clamp(-1.0, 1.0).acos()
        };
        let azimuth = components[1].atan2(components[0]);
        Self {
            k,
            theta,
            azimuth,
            components,
        }
    }

    /// Explicit components together with the magnitude and polar angle they
    /// are claimed to have; the two descriptions must agree.
    pub fn with_components(k: f64, theta: f64, components: [f64; 3]) -> Result<Self> {
        let w = Self::from_components(components);
        let scale = k.abs().max(f64::MIN_POSITIVE);
        if (w.k - k).abs() > 1e-12 * scale {
            return Err(Error::InconsistentWavevector(format!(
                "|components| = {} but k = {}",
                w.k, k
            )));
        }
        if k > 0.0 && (w.theta - theta).abs() > 1e-12 * theta.abs().max(1.0) {
            return Err(Error::InconsistentWavevector(format!(
                "components give theta = {} but theta = {}",
                w.theta, theta
            )));
        }
        Ok(w)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn components(&self) -> [f64; 3] {
        self.components
    }

    pub fn dot(&self, r: [f64; 3]) -> f64 {
        self.components[0] * r[0] + self.components[1] * r[1] + self.components[2] * r[2]
    }

    pub fn negated(&self) -> Self {
        let c = self.components;
        Self::from_components([-c[0], -c[1], -c[2]])
    }

    pub fn with_magnitude(&self, k: f64) -> Self {
        Self::new(k, self.theta, self.azimuth)
    }
}

/// In-plane direction along which the square lattice's half-extent
/// `m a / (2 cos phi)` equals the radius `m a / sqrt(pi)` of the equal-area
/// disk used by the continuum description.
pub fn equal_area_azimuth() -> f64 {
    (PI.sqrt() / 2.0).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Cosine,
    Sine,
}

impl Kernel {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Kernel::Cosine => x.cos(),
            Kernel::Sine => x.sin(),
        }
    }
}

/// Allowed form of the complex coupling strength `A_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrengthConstraint {
    RealNonNegative,
    ImaginaryNonPositive,
}

impl StrengthConstraint {
    pub fn describe(self) -> &'static str {
        match self {
            StrengthConstraint::RealNonNegative => "real, >= 0",
            StrengthConstraint::ImaginaryNonPositive => "purely imaginary, Im <= 0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionConstants {
    pub b: f64,
    pub c: f64,
    pub kernel: Kernel,
    pub strength: StrengthConstraint,
}

/// Table of `b_d`, `c_d`, kernel `g_d` and the strength constraint.
/// `theta` is only used (and required) for `d = 3`.
pub fn dimension_constants(dim: Dimension, theta: Option<f64>) -> Result<DimensionConstants> {
    Ok(match dim {
        Dimension::One => DimensionConstants {
            b: 0.5,
            c: 1.0,
            kernel: Kernel::Cosine,
            strength: StrengthConstraint::RealNonNegative,
        },
        Dimension::Two => DimensionConstants {
            b: 1.0 / PI.sqrt(),
            c: (2.0 * PI).sqrt(),
            kernel: Kernel::Cosine,
            strength: StrengthConstraint::RealNonNegative,
        },
        Dimension::Three => {
            let theta = theta.ok_or(Error::MissingTheta)?;
            DimensionConstants {
                b: (3.0 / (4.0 * PI)).cbrt(),
                c: 2.0 * PI * theta.sin().powi(2),
                kernel: Kernel::Sine,
                strength: StrengthConstraint::ImaginaryNonPositive,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_indices_follow_the_centred_range() {
        let spec = LatticeSpec::new(1, 3.0, 4).unwrap();
        let idx: Vec<i32> = build_lattice(&spec).iter().map(|p| p.indices()[0]).collect();
        assert_eq!(idx, vec![-1, 0, 1, 2]);
    }

    #[test]
    fn two_by_two_square() {
        let spec = LatticeSpec::new(2, 3.0, 2).unwrap();
        let idx: Vec<Vec<i32>> = build_lattice(&spec).iter().map(|p| p.indices().to_vec()).collect();
        assert_eq!(idx, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn cube_of_side_two_has_eight_sites() {
        let spec = LatticeSpec::new(3, 3.0, 2).unwrap();
        let sites = build_lattice(&spec);
        assert_eq!(sites.len(), 8);
        assert_eq!(spec.atom_count(), 8);
        assert!(sites.iter().any(|p| p.is_origin()));
    }

    #[test]
    fn invalid_specs_have_distinct_errors() {
        assert_eq!(LatticeSpec::new(4, 3.0, 2), Err(Error::InvalidDimension(4)));
        assert_eq!(LatticeSpec::new(1, 3.0, 3), Err(Error::OddSideLength(3)));
        assert_eq!(LatticeSpec::new(1, 3.0, 0), Err(Error::NonPositiveSideLength(0)));
        assert_eq!(LatticeSpec::new(1, 3.0, -2), Err(Error::NonPositiveSideLength(-2)));
        assert_eq!(LatticeSpec::new(1, 1.0, 2), Err(Error::LatticeConstantTooSmall(1.0)));
        assert_eq!(LatticeSpec::new(1, 0.5, 2), Err(Error::LatticeConstantTooSmall(0.5)));
    }

    #[test]
    fn coordinates_scale_with_lattice_constant() {
        let spec = LatticeSpec::new(3, 2.5, 4).unwrap();
        for p in build_lattice(&spec) {
            let c = p.coords();
            for axis in 0..3 {
                assert_eq!(c[axis], 2.5 * p.indices()[axis] as f64);
            }
        }
    }

    #[test]
    fn table_constants() {
        let one = dimension_constants(Dimension::One, None).unwrap();
        assert_eq!((one.b, one.c, one.kernel), (0.5, 1.0, Kernel::Cosine));
        let two = dimension_constants(Dimension::Two, None).unwrap();
        assert_eq!(two.b, 1.0 / PI.sqrt());
        assert_eq!(two.c, (2.0 * PI).sqrt());
        assert_eq!(two.kernel, Kernel::Cosine);
        let three = dimension_constants(Dimension::Three, Some(PI / 2.0)).unwrap();
        assert_eq!(three.c, 2.0 * PI);
        assert_eq!(three.b, (3.0 / (4.0 * PI)).cbrt());
        assert_eq!(three.kernel, Kernel::Sine);
        assert_eq!(three.strength, StrengthConstraint::ImaginaryNonPositive);
        let pole = dimension_constants(Dimension::Three, Some(0.0)).unwrap();
        assert_eq!(pole.c, 0.0);
        assert_eq!(dimension_constants(Dimension::Three, None), Err(Error::MissingTheta));
    }

    #[test]
    fn wavevector_components_roundtrip() {
        let w = Wavevector::new(1.3, 0.7, -2.1);
        let back = Wavevector::with_components(1.3, 0.7, w.components()).unwrap();
        assert!((back.k() - 1.3).abs() < 1e-15);
        assert!(Wavevector::with_components(1.4, 0.7, w.components()).is_err());
        assert!(Wavevector::with_components(1.3, 0.9, w.components()).is_err());
    }

    #[test]
    fn equal_area_direction_matches_disk_radius() {
        let phi = equal_area_azimuth();
        // half-extent along phi: (m a / 2) / cos(phi) == m a / sqrt(pi)
        assert!((0.5 / phi.cos() - 1.0 / PI.sqrt()).abs() < 1e-15);
    }
}
