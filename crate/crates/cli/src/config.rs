//! Experiment configuration: flags over config file over defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Bound,
    EntangledSweep,
    Ising,
    SeparableDemo,
    Topology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every tunable parameter, each optional so that layers can be merged.
///
/// Keys in a config file use the same names as the serialized form here
/// (`M`, `N_max`, `omega0`, `grid_step`, ...). Energies and frequencies are
/// in units with ħ = 1.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N_max", skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub mean_energy: Option<f64>,
    #[serde(rename = "dE", skip_serializing_if = "Option::is_none")]
    pub spread: Option<f64>,
    #[serde(rename = "E0", skip_serializing_if = "Option::is_none")]
    pub ground_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_owned(), source })
    }

    /// Fields set in `self` win; the rest come from `lower`.
    pub fn over(self, lower: Settings) -> Settings {
        Settings {
            m: self.m.or(lower.m),
            n: self.n.or(lower.n),
            n_max: self.n_max.or(lower.n_max),
            k: self.k.or(lower.k),
            omega0: self.omega0.or(lower.omega0),
            omega: self.omega.or(lower.omega),
            mean_energy: self.mean_energy.or(lower.mean_energy),
            spread: self.spread.or(lower.spread),
            ground_energy: self.ground_energy.or(lower.ground_energy),
            eps: self.eps.or(lower.eps),
            horizon: self.horizon.or(lower.horizon),
            grid_step: self.grid_step.or(lower.grid_step),
            value_tol: self.value_tol.or(lower.value_tol),
            time_tol: self.time_tol.or(lower.time_tol),
            topology: self.topology.or(lower.topology),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
        }
    }
}

/// The fully resolved configuration echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub units: &'static str,
    #[serde(flatten)]
    pub settings: Settings,
}

fn defaults(experiment: Experiment, layered: &Settings) -> Settings {
    let base = Settings { eps: Some(0.0), ..Settings::default() };
    match experiment {
        Experiment::Bound => Settings { ground_energy: Some(0.0), format: Some(Format::Json), ..base },
        Experiment::EntangledSweep => Settings {
            n_max: Some(64),
            m: Some(2),
            omega0: Some(1.0),
            format: Some(Format::Csv),
            ..base
        },
        Experiment::Ising => {
            let omega = layered.omega.unwrap_or(1.0);
            Settings {
                omega: Some(omega),
                omega0: Some(1e-3 * omega),
                format: Some(Format::Json),
                ..base
            }
        }
        Experiment::SeparableDemo => Settings { omega0: Some(1.0), format: Some(Format::Json), ..base },
        Experiment::Topology => Settings { format: Some(Format::Json), ..Settings::default() },
    }
}

impl ExperimentConfig {
    /// Layers `flags` over the optional config file over the defaults for
    /// `experiment`. Solver defaults depend on the model and are filled in
    /// by the experiment itself.
    pub fn resolve(experiment: Experiment, flags: Settings, file: Option<Settings>) -> Result<Self> {
        let layered = flags.over(file.unwrap_or_default());
        let settings = layered.clone().over(defaults(experiment, &layered));
        let config = Self { experiment, units: "hbar = 1", settings };
        config.check_format()?;
        Ok(config)
    }

    fn check_format(&self) -> Result<()> {
        let csv_ok = matches!(
            self.experiment,
            Experiment::Bound | Experiment::EntangledSweep | Experiment::Ising
        );
        if self.settings.format == Some(Format::Csv) && !csv_ok {
            return Err(CliError::Config(format!(
                "{:?} reports are JSON only",
                self.experiment
            )));
        }
        Ok(())
    }

    pub fn format(&self) -> Format {
        self.settings.format.unwrap_or(Format::Json)
    }

    pub fn require<T: Copy>(&self, value: Option<T>, name: &str) -> Result<T> {
        value.ok_or_else(|| CliError::Config(format!("missing required parameter {name}")))
    }
}
