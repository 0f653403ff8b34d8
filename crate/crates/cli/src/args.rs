//! Command-line surface of the `qsl` executable.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{Experiment, ExperimentConfig, Format, Settings};
use crate::error::{CliError, Result};
use crate::experiments::{
    bound_csv, cmd_bound, cmd_entangled_sweep, cmd_ising, cmd_ising_curve, cmd_separable_demo,
    cmd_topology, sweep_csv,
};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "qsl",
    version,
    about = "Quantum speed limit experiments for composite systems",
    long_about = "Quantum speed limit experiments for composite systems.\n\n\
        All energies and frequencies are in units with hbar = 1, so times are \
        in inverse energy units. Set QSL_THREADS to cap the worker count (0 = auto)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the energy bound from (E0, E, dE) and a target overlap eps.
    Bound(BoundArgs),
    /// First zero of P(t) for the maximally correlated ladder state, N = 2..N_max.
    EntangledSweep(SweepArgs),
    /// Simulate the K-body interacting spin polygon from the all-zero state.
    Ising(IsingArgs),
    /// Non-interacting qubits: measured time versus the bound, ratio sqrt(M).
    SeparableDemo(SeparableArgs),
    /// Build and validate a polygon interaction topology.
    Topology(TopologyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON file with default parameters; flags override it.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Target survival probability, 0 <= eps < 1.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Search window [0, horizon] (time units 1/energy).
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Spacing of the coarse search grid.
    #[arg(long = "grid-step")]
    pub grid_step: Option<f64>,
    /// Largest P accepted as orthogonal when eps = 0.
    #[arg(long = "value-tol")]
    pub value_tol: Option<f64>,
    /// Bracket width at which time refinement stops.
    #[arg(long = "time-tol")]
    pub time_tol: Option<f64>,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            out: self.out.clone(),
            format: self.format,
            eps: self.eps,
            horizon: self.horizon,
            grid_step: self.grid_step,
            value_tol: self.value_tol,
            time_tol: self.time_tol,
            ..Settings::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Mean energy.
    #[arg(long = "E")]
    pub mean_energy: Option<f64>,
    /// Energy spread.
    #[arg(long = "dE")]
    pub spread: Option<f64>,
    /// Ground energy (default 0).
    #[arg(long = "E0")]
    pub ground_energy: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Largest number of levels per party (default 64).
    #[arg(long = "N-max", alias = "n-max")]
    pub n_max: Option<usize>,
    /// Number of parties (default 2).
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Level spacing (default 1).
    #[arg(long)]
    pub omega0: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct IsingArgs {
    /// Number of qubits.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Interaction order.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Single-qubit frequency (default 1e-3 * omega).
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Interaction strength (default 1).
    #[arg(long)]
    pub omega: Option<f64>,
    /// Topology JSON {"M", "K", "groups"} used instead of the polygon.
    #[arg(long, value_name = "PATH")]
    pub topology: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SeparableArgs {
    /// Number of qubits.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Single-qubit frequency (default 1).
    #[arg(long)]
    pub omega0: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TopologyArgs {
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Validate this topology JSON instead of building a polygon.
    #[arg(long, value_name = "PATH")]
    pub topology: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    fn parts(&self) -> (Experiment, Settings, &Common) {
        match self {
            Command::Bound(a) => (
                Experiment::Bound,
                Settings {
                    mean_energy: a.mean_energy,
                    spread: a.spread,
                    ground_energy: a.ground_energy,
                    ..a.common.settings()
                },
                &a.common,
            ),
            Command::EntangledSweep(a) => (
                Experiment::EntangledSweep,
                Settings { n_max: a.n_max, m: a.m, omega0: a.omega0, ..a.common.settings() },
                &a.common,
            ),
            Command::Ising(a) => (
                Experiment::Ising,
                Settings {
                    m: a.m,
                    k: a.k,
                    omega0: a.omega0,
                    omega: a.omega,
                    topology: a.topology.clone(),
                    ..a.common.settings()
                },
                &a.common,
            ),
            Command::SeparableDemo(a) => (
                Experiment::SeparableDemo,
                Settings { m: a.m, omega0: a.omega0, ..a.common.settings() },
                &a.common,
            ),
            Command::Topology(a) => (
                Experiment::Topology,
                Settings { m: a.m, k: a.k, topology: a.topology.clone(), ..a.common.settings() },
                &a.common,
            ),
        }
    }

    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let (experiment, flags, common) = self.parts();
        let file = common.config.as_deref().map(Settings::load).transpose()?;
        ExperimentConfig::resolve(experiment, flags, file)
    }
}

/// What a finished command produced.
#[derive(Debug, Clone)]
pub struct Rendered {
    /// Report in the requested format.
    pub primary: String,
    /// JSON report accompanying a CSV written to a file.
    pub provenance: Option<String>,
    pub failed: Vec<String>,
    pub out: Option<PathBuf>,
}

fn render<T: Serialize>(
    report: &Report<T>,
    csv: Option<String>,
) -> Rendered {
    let json = report.to_json();
    let failed = report.failed().into_iter().map(str::to_owned).collect();
    let out = report.config.settings.out.clone();
    match csv {
        Some(csv) => Rendered { primary: csv, provenance: Some(json), failed, out },
        None => Rendered { primary: json, provenance: None, failed, out },
    }
}

pub fn execute(command: &Command) -> Result<Rendered> {
    let config = command.resolve()?;
    let csv = config.format() == Format::Csv;
    Ok(match config.experiment {
        Experiment::Bound => {
            let r = cmd_bound(config)?;
            render(&r, csv.then(|| bound_csv(&r)))
        }
        Experiment::EntangledSweep => {
            let r = cmd_entangled_sweep(config)?;
            render(&r, csv.then(|| sweep_csv(&r)))
        }
        Experiment::Ising if csv => {
            let (r, curve) = cmd_ising_curve(config)?;
            render(&r, Some(curve.to_csv()))
        }
        Experiment::Ising => render(&cmd_ising(config)?, None),
        Experiment::SeparableDemo => render(&cmd_separable_demo(config)?, None),
        Experiment::Topology => render(&cmd_topology(config)?, None),
    })
}

/// `foo.csv` → `foo.csv.json`.
pub fn provenance_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

impl Rendered {
    /// Writes to the configured file or returns the text meant for stdout.
    pub fn emit(&self) -> Result<Option<&str>> {
        match &self.out {
            Some(path) => {
                write(path, &self.primary)?;
                if let Some(json) = &self.provenance {
                    write(&provenance_path(path), json)?;
                }
                Ok(None)
            }
            None => Ok(Some(&self.primary)),
        }
    }

    pub fn failure_json(&self) -> String {
        serde_json::json!({
            "error": "checks_failed",
            "message": format!("{} check(s) failed", self.failed.len()),
            "failed": self.failed,
        })
        .to_string()
    }
}
