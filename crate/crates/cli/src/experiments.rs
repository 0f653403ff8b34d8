//! The five experiments. Each returns a typed [`Report`]; rendering to CSV or
//! JSON is separate so that library callers can inspect results directly.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::Serialize;

use qsl_core::csv::format_g17;
use qsl_core::dynamics::{
    evolve_ladder, evolve_spin, min_time_to_survival, orthogonality_classification,
    survival_entangled_closed_form, survival_ising_strong_closed_form, MinTimeResult,
    OrthogonalityClass, SolverOptions, SolverStatus, SurvivalCurve,
};
use qsl_core::linalg::{survival_probability, QuantumState};
use qsl_core::models::{
    all_zero_state, build_polygon_topology, energy_stats_ladder, energy_stats_spin, entangled_state,
    validate_topology, EnergyStats, InteractionTopology, LadderModel, SpinModel, TopologyValidation,
    DIM_BUDGET,
};
use qsl_core::speedlimit::{
    entangled_qsl_time, ising_qsl_strong, predicted_orthogonality_time_entangled,
    predicted_ratio_entangled, qsl_time, separable_bound, SpeedLimitReport,
};

use crate::config::{ExperimentConfig, Settings};
use crate::error::{CliError, Result};
use crate::report::{Check, Report};

/// Tolerance on closed-form ratio predictions.
pub const RATIO_TOL: f64 = 1e-6;
/// Slack on the 2/√3 ceiling of the entangled ratio.
pub const CEILING_TOL: f64 = 1e-9;
/// Relative tolerance of the strong-coupling predictions at finite ω₀.
pub const STRONG_REL_TOL: f64 = 0.01;

/// Solver options for a model whose survival probability contains no
/// frequency above `width`. Explicit settings override the defaults; the
/// horizon is stretched to at least `min_horizon`.
pub fn solver_options(settings: &Settings, width: f64, min_horizon: f64) -> Result<SolverOptions> {
    let auto = SolverOptions::for_frequency(width)?;
    let horizon = settings.horizon.unwrap_or(auto.horizon.max(min_horizon));
    let mut opts = SolverOptions::with_horizon(horizon, settings.grid_step.unwrap_or(auto.grid_step));
    if let Some(v) = settings.value_tol {
        opts.value_tol = v;
    }
    if let Some(v) = settings.time_tol {
        opts.time_tol = v;
    }
    opts.validate()?;
    Ok(opts)
}

fn echo_solver(settings: &mut Settings, opts: &SolverOptions) {
    settings.horizon = Some(opts.horizon);
    settings.grid_step = Some(opts.grid_step);
    settings.value_tol = Some(opts.value_tol);
    settings.time_tol = Some(opts.time_tol);
}

fn reject_epsilon(config: &ExperimentConfig) -> Result<()> {
    match config.settings.eps {
        Some(e) if e != 0.0 => Err(CliError::Config(format!(
            "{:?} measures orthogonalization times; eps must be 0, got {e}",
            config.experiment
        ))),
        _ => Ok(()),
    }
}

/// NaN makes the solver report a numeric error at `t`.
fn survival_or_nan(psi: &QuantumState, phi: qsl_core::Result<QuantumState>) -> f64 {
    phi.and_then(|phi| survival_probability(psi, &phi)).unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------- bound

#[derive(Debug, Clone, Serialize)]
pub struct BoundResults {
    pub stats: EnergyStats,
    #[serde(flatten)]
    pub bound: SpeedLimitReport,
}

pub fn cmd_bound(config: ExperimentConfig) -> Result<Report<BoundResults>> {
    let s = &config.settings;
    let e = config.require(s.mean_energy, "E")?;
    let de = config.require(s.spread, "dE")?;
    let e0 = config.require(s.ground_energy, "E0")?;
    let eps = config.require(s.eps, "eps")?;
    let stats = EnergyStats::new(e0, e, de)?;
    let bound = qsl_time(&stats, eps)?;
    let checks = vec![Check::close(
        "bound_is_max_of_branches",
        bound.bound_time,
        bound.mean_energy_branch.max(bound.spread_branch),
        0.0,
    )];
    Ok(Report { config, results: BoundResults { stats, bound }, checks })
}

pub fn bound_csv(report: &Report<BoundResults>) -> String {
    let r = &report.results;
    format!(
        "E0,E,dE,eps,T,mean_energy_branch,spread_branch,dominant_branch\n{},{},{},{},{},{},{},{}\n",
        format_g17(r.stats.ground_energy),
        format_g17(r.stats.mean_energy),
        format_g17(r.stats.spread),
        format_g17(r.bound.epsilon),
        format_g17(r.bound.bound_time),
        format_g17(r.bound.mean_energy_branch),
        format_g17(r.bound.spread_branch),
        match r.bound.dominant_branch {
            qsl_core::speedlimit::Branch::MeanEnergy => "mean-energy",
            qsl_core::speedlimit::Branch::Spread => "spread",
        }
    )
}

// ---------------------------------------------------------------- entangled sweep

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepPath {
    Simulation,
    ClosedForm,
}

impl SweepPath {
    /// Simulation whenever Nᴹ fits in the dimension budget.
    pub fn auto(model: &LadderModel) -> Self {
        match model.hilbert_dim() {
            Some(d) if d <= DIM_BUDGET => SweepPath::Simulation,
            _ => SweepPath::ClosedForm,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            SweepPath::Simulation => "simulation",
            SweepPath::ClosedForm => "closed-form",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub path: SweepPath,
    pub status: SolverStatus,
    pub t_perp_measured: Option<f64>,
    pub t_perp_predicted: f64,
    pub t0: f64,
    pub ratio: Option<f64>,
    pub ratio_closed_form: f64,
    pub solver: MinTimeResult,
}

/// Measures the first zero of P(t) for one ladder configuration.
pub fn sweep_row(
    model: &LadderModel,
    path: SweepPath,
    settings: &Settings,
) -> Result<SweepRow> {
    let t_perp_predicted = predicted_orthogonality_time_entangled(model)?;
    let opts = solver_options(settings, model.spectral_width(), 0.0)?;
    let (solver, t0) = match path {
        SweepPath::Simulation => {
            let psi = entangled_state(model)?;
            let stats = energy_stats_ladder(&psi, model)?;
            let t0 = qsl_time(&stats, 0.0)?.bound_time;
            let source = |t: f64| survival_or_nan(&psi, evolve_ladder(&psi, model, t));
            (min_time_to_survival(source, 0.0, &opts)?, t0)
        }
        SweepPath::ClosedForm => {
            let source = |t: f64| survival_entangled_closed_form(model, t);
            (min_time_to_survival(source, 0.0, &opts)?, entangled_qsl_time(model)?)
        }
    };
    Ok(SweepRow {
        n: model.num_levels(),
        m: model.num_parties(),
        path,
        status: solver.status,
        t_perp_measured: solver.time,
        t_perp_predicted,
        t0,
        ratio: solver.time.map(|t| t / t0),
        ratio_closed_form: predicted_ratio_entangled(model.num_levels())?,
        solver,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResults {
    pub rows: Vec<SweepRow>,
}

pub fn cmd_entangled_sweep(config: ExperimentConfig) -> Result<Report<SweepResults>> {
    reject_epsilon(&config)?;
    let s = &config.settings;
    let n_max = config.require(s.n_max, "N_max")?;
    let m = config.require(s.m, "M")?;
    let omega0 = config.require(s.omega0, "omega0")?;
    if n_max < 2 {
        return Err(qsl_core::Error::InvalidParameters(format!("N_max = {n_max} must be at least 2")).into());
    }
    let rows = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let model = LadderModel::new(m, n, omega0)?;
            sweep_row(&model, SweepPath::auto(&model), s)
        })
        .collect::<Result<Vec<_>>>()?;

    let ceiling = 2.0 / 3f64.sqrt();
    let mut checks = Vec::new();
    for row in &rows {
        let tag = format!("N={}", row.n);
        checks.push(Check::flag(format!("{tag} reached"), row.status == SolverStatus::Reached, true));
        let Some((t, ratio)) = row.t_perp_measured.zip(row.ratio) else { continue };
        checks.push(Check::close(
            format!("{tag} first_zero"),
            t,
            row.t_perp_predicted,
            row.solver.refinement_tolerance,
        ));
        checks.push(Check::close(format!("{tag} ratio"), ratio, row.ratio_closed_form, RATIO_TOL));
        checks.push(Check::at_most(format!("{tag} ratio_ceiling"), ratio, ceiling, CEILING_TOL));
    }
    Ok(Report { config, results: SweepResults { rows }, checks })
}

pub fn sweep_csv(report: &Report<SweepResults>) -> String {
    let mut out =
        String::from("N,M,path,T_perp_measured,T_perp_predicted,T0,ratio,ratio_closed_form,status\n");
    let opt = |x: Option<f64>| x.map(format_g17).unwrap_or_default();
    for r in &report.results.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.path.as_str(),
            opt(r.t_perp_measured),
            format_g17(r.t_perp_predicted),
            format_g17(r.t0),
            opt(r.ratio),
            format_g17(r.ratio_closed_form),
            match r.status {
                SolverStatus::Reached => "Reached",
                SolverStatus::NotReached => "NotReached",
            }
        ));
    }
    out
}

// ---------------------------------------------------------------- ising

#[derive(Debug, Clone, Serialize)]
pub struct IsingResults {
    pub topology: InteractionTopology,
    pub validation: TopologyValidation,
    #[serde(rename = "Q")]
    pub num_groups: usize,
    pub classification: OrthogonalityClass,
    pub stats: EnergyStats,
    pub solver: MinTimeResult,
    #[serde(rename = "T_perp")]
    pub t_perp: Option<f64>,
    pub min_p: f64,
    pub t_min: f64,
    #[serde(rename = "T0_exact")]
    pub t0_exact: f64,
    #[serde(rename = "T0_strong")]
    pub t0_strong: f64,
    pub ratio: Option<f64>,
    pub predicted_ratio: Option<f64>,
    #[serde(rename = "T_perp_predicted")]
    pub t_perp_predicted: Option<f64>,
    /// Smallest value of the strong-coupling survival probability.
    pub strong_min_p: f64,
}

/// Minimum over t of the strong-coupling survival probability. Each class
/// attains it at ωt = π/4, where cos² = sin² = 1/2.
pub fn strong_minimum(num_groups: usize) -> f64 {
    survival_ising_strong_closed_form(num_groups, 1.0, std::f64::consts::FRAC_PI_4)
}

fn load_topology(config: &ExperimentConfig) -> Result<InteractionTopology> {
    let s = &config.settings;
    match &s.topology {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.clone(), source })?;
            let topology: InteractionTopology = serde_json::from_str(&text)
                .map_err(|source| CliError::Json { path: path.clone(), source })?;
            if s.m.is_some_and(|m| m != topology.num_qubits())
                || s.k.is_some_and(|k| k != topology.order())
            {
                return Err(CliError::Config(format!(
                    "M/K flags disagree with topology file {}",
                    path.display()
                )));
            }
            Ok(topology)
        }
        None => Ok(build_polygon_topology(config.require(s.m, "M")?, config.require(s.k, "K")?)?),
    }
}

/// Runs the spin simulation; also returns the solver options and the model
/// for curve sampling.
fn run_ising(config: &mut ExperimentConfig) -> Result<(IsingResults, SpinModel, SolverOptions)> {
    reject_epsilon(config)?;
    let topology = load_topology(config)?;
    let validation = validate_topology(&topology);
    let omega = config.require(config.settings.omega, "omega")?;
    let omega0 = config.require(config.settings.omega0, "omega0")?;
    let model = SpinModel::new(topology.clone(), omega0, omega)?;
    let q = model.num_groups();
    let psi = all_zero_state(model.num_qubits())?;
    let stats = energy_stats_spin(&psi, &model)?;
    let t0_exact = qsl_time(&stats, 0.0)?.bound_time;
    let t0_strong = ising_qsl_strong(omega, q)?;
    let classification = orthogonality_classification(q);

    let opts = solver_options(&config.settings, model.spectral_width(), 0.0)?;
    echo_solver(&mut config.settings, &opts);
    let source = |t: f64| survival_or_nan(&psi, evolve_spin(&psi, &model, t));
    let solver = min_time_to_survival(source, 0.0, &opts)?;
    let t_perp_predicted = classification.first_zero(omega);
    let results = IsingResults {
        topology,
        validation,
        num_groups: q,
        classification,
        stats,
        solver,
        t_perp: solver.time,
        min_p: solver.achieved_value,
        t_min: solver.achieved_at,
        t0_exact,
        t0_strong,
        ratio: solver.time.map(|t| t / t0_exact),
        predicted_ratio: t_perp_predicted.map(|t| t / t0_strong),
        t_perp_predicted,
        strong_min_p: strong_minimum(q),
    };
    Ok((results, model, opts))
}

fn ising_checks(r: &IsingResults, omega0: f64) -> Vec<Check> {
    let mut checks: Vec<Check> = r
        .validation
        .checks
        .iter()
        .map(|c| Check::flag(format!("topology {}", c.name), c.pass, true))
        .collect();
    let expect_zero = r.classification.reaches_zero();
    checks.push(Check::flag("reaches_orthogonality", r.solver.reached(), expect_zero));
    match (r.t_perp, r.ratio, r.t_perp_predicted, r.predicted_ratio) {
        (Some(t), Some(ratio), Some(t_pred), Some(ratio_pred)) => {
            checks.push(Check::relative("T_perp", t, t_pred, STRONG_REL_TOL));
            checks.push(Check::relative("ratio", ratio, ratio_pred, STRONG_REL_TOL));
        }
        _ if !expect_zero => {
            let tol = if omega0 == 0.0 { 1e-9 } else { STRONG_REL_TOL };
            checks.push(Check::close("min_p", r.min_p, r.strong_min_p, tol));
        }
        _ => {}
    }
    checks
}

pub fn cmd_ising(mut config: ExperimentConfig) -> Result<Report<IsingResults>> {
    let (results, _, _) = run_ising(&mut config)?;
    let checks = ising_checks(&results, config.settings.omega0.unwrap_or(0.0));
    Ok(Report { config, results, checks })
}

/// Report plus the sampled survival curve on the solver grid.
pub fn cmd_ising_curve(mut config: ExperimentConfig) -> Result<(Report<IsingResults>, SurvivalCurve)> {
    let (results, model, opts) = run_ising(&mut config)?;
    let checks = ising_checks(&results, config.settings.omega0.unwrap_or(0.0));
    let psi = all_zero_state(model.num_qubits())?;
    let count = (opts.horizon / opts.grid_step).ceil() as usize + 1;
    let times = SurvivalCurve::uniform_times(opts.horizon, count);
    let values = times
        .par_iter()
        .map(|&t| evolve_spin(&psi, &model, t).and_then(|phi| survival_probability(&psi, &phi)))
        .collect::<qsl_core::Result<Vec<_>>>()?;
    let descriptor = format!("ising M={} Q={}", model.num_qubits(), model.num_groups());
    let curve = SurvivalCurve {
        descriptor,
        times,
        values,
    };
    Ok((Report { config, results, checks }, curve))
}

// ---------------------------------------------------------------- separable demo

#[derive(Debug, Clone, Serialize)]
pub struct SeparableResults {
    #[serde(rename = "M")]
    pub m: usize,
    pub stats: EnergyStats,
    pub solver: MinTimeResult,
    #[serde(rename = "T_perp")]
    pub t_perp: Option<f64>,
    #[serde(rename = "T_perp_predicted")]
    pub t_perp_predicted: f64,
    #[serde(rename = "T0")]
    pub t0: f64,
    pub separable_bound: f64,
    pub ratio: Option<f64>,
    pub predicted_ratio: f64,
}

pub fn cmd_separable_demo(mut config: ExperimentConfig) -> Result<Report<SeparableResults>> {
    reject_epsilon(&config)?;
    let m = config.require(config.settings.m, "M")?;
    let omega0 = config.require(config.settings.omega0, "omega0")?;
    let model = SpinModel::free(m, omega0)?;
    let psi = all_zero_state(m)?;
    let stats = energy_stats_spin(&psi, &model)?;
    let t0 = qsl_time(&stats, 0.0)?.bound_time;
    // every qubit carries ℰᵢ = Δℰᵢ = ω₀
    let separable = separable_bound(&vec![(omega0, omega0); m])?;

    // one full single-qubit period keeps the first zero inside the window
    let opts = solver_options(&config.settings, model.spectral_width(), std::f64::consts::TAU / omega0)?;
    echo_solver(&mut config.settings, &opts);
    let source = |t: f64| survival_or_nan(&psi, evolve_spin(&psi, &model, t));
    let solver = min_time_to_survival(source, 0.0, &opts)?;
    let t_perp_predicted = FRAC_PI_2 / omega0;
    let predicted_ratio = (m as f64).sqrt();
    let results = SeparableResults {
        m,
        stats,
        solver,
        t_perp: solver.time,
        t_perp_predicted,
        t0,
        separable_bound: separable,
        ratio: solver.time.map(|t| t / t0),
        predicted_ratio,
    };

    let mut checks = vec![
        Check::flag("reached", solver.reached(), true),
        Check::relative("separable_bound_is_T_perp", separable, t_perp_predicted, RATIO_TOL),
    ];
    if let (Some(t), Some(ratio)) = (results.t_perp, results.ratio) {
        checks.push(Check::close("T_perp", t, t_perp_predicted, solver.refinement_tolerance));
        checks.push(Check::close("ratio", ratio, predicted_ratio, RATIO_TOL));
    }
    Ok(Report { config, results, checks })
}

// ---------------------------------------------------------------- topology

#[derive(Debug, Clone, Serialize)]
pub struct TopologyResults {
    pub topology: InteractionTopology,
    #[serde(rename = "Q")]
    pub num_groups: usize,
    pub polygon_sides: Option<usize>,
    pub validation: TopologyValidation,
}

pub fn cmd_topology(config: ExperimentConfig) -> Result<Report<TopologyResults>> {
    let topology = load_topology(&config)?;
    let validation = validate_topology(&topology);
    let checks = validation.checks.iter().map(|c| Check::flag(c.name.clone(), c.pass, true)).collect();
    let results = TopologyResults {
        num_groups: topology.num_groups(),
        polygon_sides: topology.polygon_sides(),
        topology,
        validation,
    };
    Ok(Report { config, results, checks })
}
