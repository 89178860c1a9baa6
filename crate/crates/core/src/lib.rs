//! Single-photon superradiance in extended d-dimensional atomic lattices.
//!
//! Brute-force lattice numerics ([`spectrum`]), the continuum theory of the
//! collective decay rate and shift ([`analytics`]), and an inverse design
//! solver ([`design`]) that turns a target rate and shift into lattice and
//! coupling parameters.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod coupling;
pub mod design;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod specfun;
pub mod spectrum;

pub use coupling::{coupling_matrix, dicke_matrix, pair_coupling, CouplingModel, Sign, SingleAtomTerm};
pub use error::{Error, ErrorClass, Result};
pub use lattice::{build_lattice, dimension_constants, Dimension, DimensionConstants, LatticePosition, LatticeSpec, Wavevector};
pub use matrix::ComplexMatrix;
pub use spectrum::{dispersion_scan, lattice_sum, solve_modes, DispersionPoint, SpectrumResult};
pub use analytics::{chi_max, continuum_i, find_offset_h, AnalyticContext, ContinuumResult};
pub use design::{delta_for_xi, dicke_compatible, similar_alpha, solve_design, transform_chi, DesignSolution, DesignTarget, FreeParameter};
