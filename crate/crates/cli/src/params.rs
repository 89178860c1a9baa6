//! Parameter records for each subcommand. Every field is optional so that a
//! JSON config file and command-line flags can be merged, flags winning.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use superrad_core::{Dimension, Sign};

use crate::error::{missing, CliError, Result};
use crate::output::Format;

macro_rules! params {
    ($(#[$sm:meta])* $name:ident { $( $(#[$m:meta])* $field:ident : $ty:ty ),* $(,)? }) => {
        $(#[$sm])*
        #[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
        #[serde(default)]
        pub struct $name {
            $( $(#[$m])* #[serde(skip_serializing_if = "Option::is_none")] pub $field: Option<$ty>, )*
        }

        impl $name {
            /// Field-wise merge; values already set on `self` win.
            pub fn or(self, other: Self) -> Self {
                Self { $( $field: self.$field.or(other.$field), )* }
            }
        }
    };
}

params!(SimulateParams {
    /// Lattice dimension (1, 2 or 3)
    #[arg(long = "d")]
    d: u32,
    /// Atoms per side (even)
    #[arg(long)]
    m: i64,
    /// Coupling exponent
    #[arg(long)]
    alpha: f64,
    /// Coupling strength magnitude |A| [default: 1]
    #[arg(long = "A")]
    #[serde(rename = "A")]
    a: f64,
    /// Lattice constant in units of 1/k0
    #[arg(long)]
    k0a: f64,
    /// Single-atom detuning delta omega_0 in units of gamma_0 [default: 0]
    #[arg(long = "delta-omega0", allow_negative_numbers = true)]
    delta_omega0: f64,
    /// Phase sign of the coupling, +1 or -1 [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    epsilon: i32,
    /// All-to-all Dicke coupling instead of a lattice
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    dicke: bool,
    /// Number of atoms for --dicke
    #[arg(long)]
    n: i64,
    /// Cap on the number of atoms [default: 8192]
    #[arg(long)]
    max_atoms: usize,
    /// Include eigenvectors in JSON output
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    vectors: bool,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    output: PathBuf,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Format,
});

params!(DispersionParams {
    /// Lattice dimension (1, 2 or 3)
    #[arg(long = "d")]
    d: u32,
    /// Atoms per side (even)
    #[arg(long)]
    m: i64,
    /// Coupling exponent
    #[arg(long)]
    alpha: f64,
    /// Coupling strength magnitude |A| [default: 1]
    #[arg(long = "A")]
    #[serde(rename = "A")]
    a: f64,
    /// Lattice constant in units of 1/k0
    #[arg(long)]
    k0a: f64,
    /// Phase sign of the coupling, +1 or -1 [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    epsilon: i32,
    /// Polar angle of k against the x3 axis [default: pi/2]
    #[arg(long)]
    theta: f64,
    /// Azimuth of k in the x1-x2 plane [default: matched to the continuum radius]
    #[arg(long, allow_negative_numbers = true)]
    azimuth: f64,
    /// Lower end of the k/k0 grid
    #[arg(long)]
    k_min: f64,
    /// Upper end of the k/k0 grid
    #[arg(long)]
    k_max: f64,
    /// Half-width of the grid in xi when k-min/k-max are absent [default: 3 pi]
    #[arg(long)]
    xi_max: f64,
    /// Number of grid points [default: 201]
    #[arg(long)]
    points: usize,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    output: PathBuf,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Format,
});

params!(AnalyticParams {
    /// Sample dimension (1, 2 or 3)
    #[arg(long = "d")]
    d: u32,
    /// Coupling exponent
    #[arg(long)]
    alpha: f64,
    /// Coupling strength magnitude |A| [default: 1]
    #[arg(long = "A")]
    #[serde(rename = "A")]
    a: f64,
    /// Lattice constant in units of 1/k0
    #[arg(long)]
    k0a: f64,
    /// Number of atoms N
    #[arg(long)]
    atoms: f64,
    /// Atoms per side, giving N = m^d when --atoms is absent
    #[arg(long)]
    m: i64,
    /// Phase sign of the coupling, +1 or -1 [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    epsilon: i32,
    /// Polar angle of k against the x3 axis [default: pi/2]
    #[arg(long)]
    theta: f64,
    /// Lower end of the k/k0 grid
    #[arg(long)]
    k_min: f64,
    /// Upper end of the k/k0 grid
    #[arg(long)]
    k_max: f64,
    /// Half-width of the grid in xi when k-min/k-max are absent [default: 3 pi]
    #[arg(long)]
    xi_max: f64,
    /// Number of grid points [default: 201]
    #[arg(long)]
    points: usize,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    output: PathBuf,
    /// Output format [default: csv]
    #[arg(long, value_enum)]
    format: Format,
});

params!(DesignParams {
    /// Target collective decay rate in units of gamma_0 (> 1)
    #[arg(long)]
    gamma: f64,
    /// Target collective shift in units of gamma_0
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// Target phase xi instead of --delta
    #[arg(long, allow_negative_numbers = true)]
    xi: f64,
    /// Sample dimension (1, 2 or 3)
    #[arg(long = "d")]
    d: u32,
    /// Coupling exponent
    #[arg(long)]
    alpha: f64,
    /// Coupling strength magnitude |A| (leave out to solve for it)
    #[arg(long = "A")]
    #[serde(rename = "A")]
    a: f64,
    /// Lattice constant in units of 1/k0 (leave out to solve for it)
    #[arg(long)]
    k0a: f64,
    /// Number of atoms N (leave out to solve for it)
    #[arg(long)]
    atoms: f64,
    /// Phase sign of the coupling, +1 or -1 [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    epsilon: i32,
    /// Polar angle of k against the dipoles for d = 3 [default: pi/2]
    #[arg(long)]
    theta: f64,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    output: PathBuf,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    format: Format,
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Trace,
    Dicke,
    Collapse,
    Closedform,
    Roundtrip,
    Scaling,
    All,
}

params!(ValidateParams {
    /// Suite to run [default: all]
    #[arg(long, value_enum)]
    suite: Suite,
    /// Seed for the randomized suites [default: 0]
    #[arg(long)]
    seed: u64,
    /// Output file (stdout when absent)
    #[arg(long, short)]
    output: PathBuf,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    format: Format,
});

/// Reads a JSON parameter file; unknown keys are ignored so that earlier
/// outputs can be fed back as configs.
pub fn load_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| missing(flag))
}

pub fn dimension(d: Option<u32>) -> Result<Dimension> {
    Ok(Dimension::new(require(d, "d")?)?)
}

pub fn sign(epsilon: Option<i32>) -> Result<Sign> {
    Ok(Sign::try_from(epsilon.unwrap_or(1))?)
}
