//! Brute-force numerics: dense diagonalisation of the collective eigenproblem
//! and exact plane-wave lattice sums.
//!
//! The mode energies `E - w0` are the eigenvalues of `-(i/2) M`, so with
//! `lambda` an eigenvalue of the coupling matrix `M`, the decay rate is
//! `Gamma = Re(lambda)` and the shift is `Delta = Im(lambda)/2`.

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coupling::CouplingModel;
use crate::error::{Error, Result};
use crate::lattice::{LatticePosition, Wavevector};
use crate::matrix::ComplexMatrix;

/// Relative tolerance under which eigenvalues count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Largest accepted `||M U - U diag(lambda)|| / ||M||`.
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// `E_n - w0`.
    pub eigenvalues: Vec<Complex64>,
    pub rates: Vec<f64>,
    pub shifts: Vec<f64>,
    /// Column `n` belongs to eigenvalue `n`.
    pub eigenvectors: ComplexMatrix,
    /// Relative residual of the decomposition.
    pub residual: f64,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn total_rate(&self) -> f64 {
        self.rates.iter().sum()
    }

    pub fn total_shift(&self) -> f64 {
        self.shifts.iter().sum()
    }
}

fn check_input(matrix: &ComplexMatrix) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::NonSquareMatrix {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    if !matrix.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if matrix.nrows() == 0 {
        return Err(Error::InvalidArgument("empty coupling matrix".into()));
    }
    Ok(())
}

fn to_faer(matrix: &ComplexMatrix) -> Mat<Complex64> {
    Mat::from_fn(matrix.nrows(), matrix.ncols(), |i, j| matrix[(i, j)])
}

fn energy(lambda: Complex64) -> Complex64 {
    Complex64::new(0.0, -0.5) * lambda
}

// Gamma descending, then Delta ascending.
fn mode_order(lambdas: &[Complex64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&a, &b| {
        lambdas[b]
            .re
            .total_cmp(&lambdas[a].re)
            .then(lambdas[a].im.total_cmp(&lambdas[b].im))
    });
    order
}

/// Eigenvalues only; cheaper than [`solve_modes`] when vectors are not needed.
pub fn solve_energies(matrix: &ComplexMatrix) -> Result<Vec<Complex64>> {
    check_input(matrix)?;
    let lambdas = to_faer(matrix)
        .eigenvalues()
        .map_err(|_| Error::Diagonalization { residual: f64::NAN })?;
    Ok(mode_order(&lambdas).into_iter().map(|i| energy(lambdas[i])).collect())
}

/// Full eigendecomposition of the collective eigenproblem for coupling matrix `matrix`.
pub fn solve_modes(matrix: &ComplexMatrix) -> Result<SpectrumResult> {
    check_input(matrix)?;
    let n = matrix.nrows();
    let a = to_faer(matrix);
    let evd = a.eigen().map_err(|_| Error::Diagonalization { residual: f64::NAN })?;
    let s = evd.S();
    let u = evd.U();
    let lambdas: Vec<Complex64> = (0..n).map(|i| s[i]).collect();

    let au = &a * u;
    let mut res2 = 0.0;
    let mut a2 = 0.0;
    for j in 0..n {
        for i in 0..n {
            res2 += (au[(i, j)] - u[(i, j)] * lambdas[j]).norm_sqr();
            a2 += a[(i, j)].norm_sqr();
        }
    }
    let col_scale = (0..n)
        .map(|j| (0..n).map(|i| u[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
        .max(1.0);
    let residual = res2.sqrt() / (a2.sqrt().max(f64::MIN_POSITIVE) * col_scale);
    if !(residual <= RESIDUAL_TOL) {
        return Err(Error::Diagonalization { residual });
    }

    let order = mode_order(&lambdas);
    let mut vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&j| {
            let col: Vec<Complex64> = (0..n).map(|i| u[(i, j)]).collect();
            normalised(col)
        })
        .collect();
    let sorted: Vec<Complex64> = order.iter().map(|&j| lambdas[j]).collect();
    orthonormalise_blocks(&sorted, &mut vectors);

    let eigenvalues: Vec<Complex64> = sorted.iter().map(|&l| energy(l)).collect();
    let rates = eigenvalues.iter().map(|e| -2.0 * e.im).collect();
    let shifts = eigenvalues.iter().map(|e| e.re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[j][i]);
    Ok(SpectrumResult {
        eigenvalues,
        rates,
        shifts,
        eigenvectors,
        residual,
    })
}

fn normalised(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|z| *z /= norm);
    }
    v
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

// Modified Gram-Schmidt inside each run of (numerically) equal eigenvalues.
fn orthonormalise_blocks(lambdas: &[Complex64], vectors: &mut [Vec<Complex64>]) {
    let scale = lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max).max(1.0);
    let mut start = 0;
    while start < lambdas.len() {
        let mut end = start + 1;
        while end < lambdas.len() && (lambdas[end] - lambdas[start]).norm() <= DEGENERACY_TOL * scale {
            end += 1;
        }
        for j in start..end {
            for k in start..j {
                let (done, rest) = vectors.split_at_mut(j);
                let proj = inner(&done[k], &rest[0]);
                for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * y;
                }
            }
            let v = std::mem::take(&mut vectors[j]);
            vectors[j] = normalised(v);
        }
        start = end;
    }
}

/// One point of the exact lattice-sum dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionPoint {
    pub k: f64,
    pub theta: f64,
    pub azimuth: f64,
    /// `I_d(k) = sum' V_r exp(-i k.r)` over all sites except the origin.
    pub i_d: Complex64,
    /// `1 + Re I_d`.
    pub chi: f64,
    /// `Delta_k - dw0 = Im I_d / 2`.
    pub shift: f64,
}

impl DispersionPoint {
    fn new(kvec: &Wavevector, i_d: Complex64) -> Self {
        Self {
            k: kvec.k(),
            theta: kvec.theta(),
            azimuth: kvec.azimuth(),
            i_d,
            chi: 1.0 + i_d.re,
            shift: 0.5 * i_d.im,
        }
    }
}

/// Pair couplings of every site with the origin, computed once and reused
/// across wavevectors.
#[derive(Debug, Clone)]
pub struct SiteCouplings {
    sites: Vec<([f64; 3], Complex64)>,
}

impl SiteCouplings {
    pub fn new(lattice: &[LatticePosition], models: &[CouplingModel]) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::InvalidArgument("at least one coupling term is required".into()));
        }
        if !lattice.iter().any(|p| p.is_origin()) {
            return Err(Error::InvalidArgument("lattice does not contain the origin".into()));
        }
        let sites = lattice
            .par_iter()
            .filter(|p| !p.is_origin())
            .map(|p| {
                let r = p.coords();
                let v = models.iter().map(|m| m.evaluate(r)).sum::<Result<Complex64>>()?;
                Ok((r, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { sites })
    }

    pub fn sum(&self, kvec: &Wavevector) -> Complex64 {
        self.sites
            .iter()
            .map(|&(r, v)| v * Complex64::from_polar(1.0, -kvec.dot(r)))
            .sum()
    }

    pub fn point(&self, kvec: &Wavevector) -> DispersionPoint {
        DispersionPoint::new(kvec, self.sum(kvec))
    }
}

pub fn lattice_sum(lattice: &[LatticePosition], models: &[CouplingModel], kvec: &Wavevector) -> Result<DispersionPoint> {
    Ok(SiteCouplings::new(lattice, models)?.point(kvec))
}

/// Uniform grid `k_min ..= k_max` with `points` entries.
pub fn k_grid(k_min: f64, k_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(k_min < k_max) || !k_min.is_finite() || !k_max.is_finite() {
        return Err(Error::InvalidArgument(format!("scan needs k_min < k_max, got {k_min}, {k_max}")));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(format!("scan needs at least 2 points, got {points}")));
    }
    let step = (k_max - k_min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { k_max } else { k_min + step * i as f64 })
        .collect())
}

/// Lattice sums along a fixed direction `(theta, azimuth)`.
pub fn dispersion_scan(
    lattice: &[LatticePosition],
    models: &[CouplingModel],
    k_min: f64,
    k_max: f64,
    points: usize,
    theta: f64,
    azimuth: f64,
) -> Result<Vec<DispersionPoint>> {
    let ks = k_grid(k_min, k_max, points)?;
    let couplings = SiteCouplings::new(lattice, models)?;
    Ok(ks
        .par_iter()
        .map(|&k| couplings.point(&Wavevector::new(k, theta, azimuth)))
        .collect())
}
