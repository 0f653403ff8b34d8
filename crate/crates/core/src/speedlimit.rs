//! Energy-based lower bounds on evolution times and the closed-form
//! predictions for the ladder and spin models. ħ = 1 throughout.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::dynamics::{orthogonality_classification, OrthogonalityClass};
use crate::error::{Error, Result};
use crate::models::{build_polygon_topology, separable_energy_composition, EnergyStats, LadderModel};

/// Which term of the bound attains the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    MeanEnergy,
    Spread,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedLimitReport {
    pub bound_time: f64,
    pub dominant_branch: Branch,
    pub epsilon: f64,
    /// α(ε) as used here: the β² approximation, not the exact function.
    pub alpha_used: f64,
    pub beta_used: f64,
    pub mean_energy_branch: f64,
    pub spread_branch: f64,
}

fn check_unit_interval(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside [0, 1]")));
    }
    Ok(())
}

/// β(ε) = 2 arccos(√ε)/π.
pub fn beta(epsilon: f64) -> Result<f64> {
    check_unit_interval(epsilon)?;
    Ok(2.0 * epsilon.sqrt().acos() / PI)
}

/// β(ε)², the standard numerical approximation of α(ε).
pub fn alpha_approx(epsilon: f64) -> Result<f64> {
    let b = beta(epsilon)?;
    Ok(b * b)
}

/// `scale·π/(2x)`, infinite when `x` is zero and `scale` is not.
fn branch_time(scale: f64, resource: f64) -> f64 {
    if resource > 0.0 {
        scale * FRAC_PI_2 / resource
    } else {
        f64::INFINITY
    }
}

/// 𝒯_ε = max(α(ε)π/2(E−E₀), β(ε)π/2ΔE). Ties are reported as [`Branch::Spread`].
pub fn qsl_time(stats: &EnergyStats, epsilon: f64) -> Result<SpeedLimitReport> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon = {epsilon} outside [0, 1)")));
    }
    let excitation = stats.excitation();
    if excitation <= 0.0 && stats.spread <= 0.0 {
        return Err(Error::StationaryState);
    }
    let alpha = alpha_approx(epsilon)?;
    let beta = beta(epsilon)?;
    let mean_energy_branch = branch_time(alpha, excitation);
    let spread_branch = branch_time(beta, stats.spread);
    let (bound_time, dominant_branch) = if mean_energy_branch > spread_branch {
        (mean_energy_branch, Branch::MeanEnergy)
    } else {
        (spread_branch, Branch::Spread)
    };
    Ok(SpeedLimitReport {
        bound_time,
        dominant_branch,
        epsilon,
        alpha_used: alpha,
        beta_used: beta,
        mean_energy_branch,
        spread_branch,
    })
}

/// Orthogonalization bound for separable pure states, set by the fastest
/// subsystem: max(π/2ℰ_max, π/2Δℰ_max).
pub fn separable_bound(subsystems: &[(f64, f64)]) -> Result<f64> {
    let c = separable_energy_composition(subsystems)?;
    if c.max_energy <= 0.0 && c.max_spread <= 0.0 {
        return Err(Error::StationaryState);
    }
    Ok(branch_time(1.0, c.max_energy).max(branch_time(1.0, c.max_spread)))
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::Domain(format!("{name} = {value} must be positive and finite")));
    }
    Ok(())
}

/// 𝒯₀ = √3π/(M√(N²−1)ω₀) for the maximally correlated ladder state.
pub fn entangled_qsl_time(model: &LadderModel) -> Result<f64> {
    check_positive("omega0", model.omega0())?;
    let n = model.num_levels() as f64;
    Ok(3f64.sqrt() * PI / (model.num_parties() as f64 * (n * n - 1.0).sqrt() * model.omega0()))
}

/// First zero of the entangled survival probability, 2π/(NMω₀).
pub fn predicted_orthogonality_time_entangled(model: &LadderModel) -> Result<f64> {
    check_positive("omega0", model.omega0())?;
    Ok(2.0 * PI / (model.num_levels() as f64 * model.num_parties() as f64 * model.omega0()))
}

/// 𝒯_⊥/𝒯₀ = 2√(N²−1)/(√3N), independent of M.
pub fn predicted_ratio_entangled(num_levels: usize) -> Result<f64> {
    if num_levels < 2 {
        return Err(Error::Domain(format!("N = {num_levels} must be at least 2")));
    }
    let n = num_levels as f64;
    Ok(2.0 * (n * n - 1.0).sqrt() / (3f64.sqrt() * n))
}

/// Strong-coupling (ω ≫ ω₀) approximation π/(2ω√Q) of the bound for the
/// all-zero spin state.
pub fn ising_qsl_strong(omega: f64, num_groups: usize) -> Result<f64> {
    check_positive("omega", omega)?;
    if num_groups == 0 {
        return Err(Error::Domain("Q must be at least 1".into()));
    }
    Ok(PI / (2.0 * omega * (num_groups as f64).sqrt()))
}

/// 𝒯_⊥/𝒯₀ = √(M/2K) for a polygon whose Q is twice an odd number.
pub fn predicted_ratio_ising(num_qubits: usize, order: usize) -> Result<f64> {
    let topology = build_polygon_topology(num_qubits, order)?;
    let q = topology.num_groups();
    match orthogonality_classification(q) {
        OrthogonalityClass::ZeroTwiceOdd => Ok((num_qubits as f64 / (2.0 * order as f64)).sqrt()),
        _ => Err(Error::NoOrthogonality(q)),
    }
}
