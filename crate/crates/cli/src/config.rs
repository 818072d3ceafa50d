use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Start state for `simulate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Initial {
    Plus,
    Minus,
    Random,
}

/// Run parameters. Every field can come from a flag or from the TOML config
/// file under the flag's name; flags win.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Rank of the free group.
    #[arg(long)]
    pub r: Option<usize>,
    /// Largest rank for sweeps over r.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Coupling strength (inverse temperature).
    #[arg(long = "J", allow_negative_numbers = true)]
    #[serde(rename = "J")]
    pub coupling: Option<f64>,
    #[arg(long = "J-min", allow_negative_numbers = true)]
    #[serde(rename = "J-min")]
    pub j_min: Option<f64>,
    #[arg(long = "J-max", allow_negative_numbers = true)]
    #[serde(rename = "J-max")]
    pub j_max: Option<f64>,
    #[arg(long = "J-steps")]
    #[serde(rename = "J-steps")]
    pub j_steps: Option<usize>,
    /// Tilt of the chain for single-chain commands.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<usize>,
    /// Number of vertices; a comma-separated list where several sizes apply.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Ball radius, or the magnetization window for `coexistence`.
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Grid resolution for `region` and `verify-theoremB`; update count for
    /// `simulate`.
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub record_every: Option<u64>,
    #[arg(long, value_enum)]
    pub initial: Option<Initial>,
    /// Number of states for `potts-curve`.
    #[arg(long)]
    pub q: Option<usize>,
    /// Family index for `potts-curve`; all families when absent.
    #[arg(long)]
    pub family: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel simulation.
    #[arg(long, env = "SOFIC_PRESSURE_THREADS")]
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        Settings { $($field: $top.$field.or($base.$field)),* }
    };
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `self` take precedence over `base`.
    pub fn over(self, base: Settings) -> Settings {
        let top = self;
        overlay!(
            base, top, r, r_max, coupling, j_min, j_max, j_steps, t, t_min, t_max, t_steps, n, eps, samples, seed,
            steps, record_every, initial, q, family, tol, out, threads
        )
    }
}
