//! JSON run configuration for the command-line harness.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solver::{GridSpec, Scenario, SolverError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Harness mode, selectable on the command line or in the config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    CheckAlgebra,
    CheckBilinears,
    CheckLorentz,
    Simulate,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::CheckAlgebra => "check-algebra",
            Mode::CheckBilinears => "check-bilinears",
            Mode::CheckLorentz => "check-lorentz",
            Mode::Simulate => "simulate",
        }
    }
}

/// Grid block of the config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub dims: [usize; 3],
    pub dx: f64,
}

impl GridConfig {
    pub fn to_spec(self) -> Result<GridSpec, SolverError> {
        GridSpec::new(self.dims, self.dx)
    }
}

/// Pass thresholds. Defaults are the module contracts; any override is
/// echoed into the summary JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Point-bilinear formula vs oracle.
    pub point_bilinear: f64,
    /// Jet-based bilinears vs oracle with exact jets.
    pub jet_bilinear: f64,
    /// Jet-based bilinears vs oracle with finite-difference derivatives.
    pub fd_bilinear: f64,
    /// Central-difference step for the finite-difference oracle route.
    pub fd_step: f64,
    /// Covariance and invariance checks over random rotors.
    pub lorentz: f64,
    /// Relative drift of the conserved total Q0 over a run.
    pub drift: f64,
    /// Max field deviation from the analytic translation, when one exists.
    pub field_error: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            point_bilinear: 1e-12,
            jet_bilinear: 1e-12,
            fd_bilinear: 1e-6,
            fd_step: 1e-4,
            lorentz: 1e-10,
            drift: 1e-6,
            field_error: 1e-5,
        }
    }
}

fn default_seed() -> u64 {
    1
}

fn default_samples() -> usize {
    1000
}

/// One JSON document driving a whole run. Unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub scenario: Option<Scenario>,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub steps: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: None,
            grid: None,
            scenario: None,
            dt: None,
            steps: None,
            output: None,
            seed: default_seed(),
            samples: default_samples(),
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<RunConfig, HarnessError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Grid to simulate on; defaults to 64x1x1 with dx = 1/64.
    pub fn grid_spec(&self) -> Result<GridSpec, HarnessError> {
        match self.grid {
            Some(g) => Ok(g.to_spec()?),
            None => Ok(GridSpec::new([64, 1, 1], 1.0 / 64.0)?),
        }
    }

    /// Scenario to simulate; defaults to the unit transverse plane wave
    /// with one cycle in the box.
    pub fn scenario(&self) -> Scenario {
        self.scenario
            .clone()
            .unwrap_or_else(|| Scenario::plane_wave(0, std::f64::consts::TAU, 1.0))
    }

    /// Time step; defaults to 0.25 dx.
    pub fn dt(&self, spec: &GridSpec) -> f64 {
        self.dt.unwrap_or(0.25 * spec.spacing)
    }

    pub fn steps(&self) -> u64 {
        self.steps.unwrap_or(1000)
    }

    pub fn output_path(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from("simulation.csv"))
    }
}
