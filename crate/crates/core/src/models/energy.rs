use serde::{Deserialize, Serialize};

use super::{LadderModel, SpinModel};
use crate::error::{Error, Result};
use crate::linalg::{walsh_hadamard, QuantumState};

/// Ground energy, mean energy and energy spread of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyStats {
    pub ground_energy: f64,
    pub mean_energy: f64,
    pub spread: f64,
}

impl EnergyStats {
    pub fn new(ground_energy: f64, mean_energy: f64, spread: f64) -> Result<Self> {
        if ![ground_energy, mean_energy, spread].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameters("energy statistics must be finite".into()));
        }
        if spread < 0.0 {
            return Err(Error::InvalidParameters(format!("spread {spread} is negative")));
        }
        if mean_energy < ground_energy {
            return Err(Error::InvalidParameters(format!(
                "mean energy {mean_energy} below ground energy {ground_energy}"
            )));
        }
        Ok(Self { ground_energy, mean_energy, spread })
    }

    /// E − E₀.
    pub fn excitation(&self) -> f64 {
        self.mean_energy - self.ground_energy
    }

    /// Mean and spread of a distribution over energy eigenvalues, E₀ = 0.
    fn from_distribution(weights: impl Iterator<Item = (f64, f64)> + Clone) -> Self {
        let mean: f64 = weights.clone().map(|(p, e)| p * e).sum();
        let var: f64 = weights.map(|(p, e)| p * (e - mean) * (e - mean)).sum();
        Self { ground_energy: 0.0, mean_energy: mean.max(0.0), spread: var.max(0.0).sqrt() }
    }
}

fn check_dims(state: &QuantumState, level: usize, count: usize) -> Result<()> {
    if state.num_subsystems() != count || state.dims().iter().any(|&d| d != level) {
        return Err(Error::Shape(format!(
            "state dims {:?}, expected {count} subsystems of dimension {level}",
            state.dims()
        )));
    }
    Ok(())
}

/// Exact E and ΔE under the spin Hamiltonian, via its σ_x-basis diagonal form.
pub fn energy_stats_spin(state: &QuantumState, model: &SpinModel) -> Result<EnergyStats> {
    check_dims(state, 2, model.num_qubits())?;
    let mut coeffs = state.amplitudes().to_vec();
    walsh_hadamard(&mut coeffs);
    let energies = model.x_basis_energies();
    Ok(EnergyStats::from_distribution(
        coeffs.iter().map(|a| a.norm_sqr()).zip(energies.iter().copied()),
    ))
}

/// Exact E and ΔE under H = Σᵢ Hᵢ with Hᵢ|n⟩ = nω₀|n⟩.
pub fn energy_stats_ladder(state: &QuantumState, model: &LadderModel) -> Result<EnergyStats> {
    check_dims(state, model.num_levels(), model.num_parties())?;
    let energies = model
        .level_energies()
        .ok_or_else(|| Error::Shape("ladder dimension overflow".into()))?;
    Ok(EnergyStats::from_distribution(
        state.amplitudes().iter().map(|a| a.norm_sqr()).zip(energies.iter().copied()),
    ))
}

/// Totals and maxima of per-subsystem (ℰᵢ, Δℰᵢ) for a product state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableComposition {
    pub mean_energy: f64,
    pub spread: f64,
    pub max_energy: f64,
    pub max_spread: f64,
}

/// E = Σℰᵢ and ΔE = √(ΣΔℰᵢ²), with the per-subsystem maxima.
pub fn separable_energy_composition(subsystems: &[(f64, f64)]) -> Result<SeparableComposition> {
    if subsystems.is_empty() {
        return Err(Error::InvalidParameters("no subsystems".into()));
    }
    if let Some(&(e, de)) = subsystems
        .iter()
        .find(|&&(e, de)| !(e >= 0.0 && de >= 0.0 && e.is_finite() && de.is_finite()))
    {
        return Err(Error::InvalidParameters(format!("subsystem ({e}, {de}) must be finite and >= 0")));
    }
    Ok(SeparableComposition {
        mean_energy: subsystems.iter().map(|s| s.0).sum(),
        spread: subsystems.iter().map(|s| s.1 * s.1).sum::<f64>().sqrt(),
        max_energy: subsystems.iter().map(|s| s.0).fold(0.0, f64::max),
        max_spread: subsystems.iter().map(|s| s.1).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{all_zero_state, build_polygon_topology, entangled_state, plus_state};

    #[test]
    fn all_zero_spin_stats() {
        for (m, k) in [(6, 2), (6, 3), (12, 4)] {
            let t = build_polygon_topology(m, k).unwrap();
            let q = t.num_groups() as f64;
            let (w0, w) = (0.3, 1.7);
            let model = SpinModel::new(t, w0, w).unwrap();
            let s = energy_stats_spin(&all_zero_state(m).unwrap(), &model).unwrap();
            let mf = m as f64;
            assert!((s.mean_energy - (w0 * mf + w * q)).abs() < 1e-12);
            assert!((s.spread - (w0 * w0 * mf + w * w * q).sqrt()).abs() < 1e-12);
            assert_eq!(s.ground_energy, 0.0);
        }
    }

    #[test]
    fn ring_of_six_pure_interaction() {
        // x-basis brute force: uniform weights, E_k = 2·#odd bonds
        let model = SpinModel::new(build_polygon_topology(6, 2).unwrap(), 0.0, 1.0).unwrap();
        let s = energy_stats_spin(&all_zero_state(6).unwrap(), &model).unwrap();
        assert!((s.mean_energy - 6.0).abs() < 1e-12);
        assert!((s.spread - 6f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn plus_state_is_ground() {
        let model = SpinModel::new(build_polygon_topology(12, 4).unwrap(), 0.5, 3.0).unwrap();
        let s = energy_stats_spin(&plus_state(12).unwrap(), &model).unwrap();
        assert!(s.mean_energy.abs() < 1e-12 && s.spread.abs() < 1e-12);
    }

    #[test]
    fn entangled_ladder_stats() {
        for n in 2..=6 {
            for m in 1..=3 {
                let model = LadderModel::new(m, n, 1.3).unwrap();
                let s = energy_stats_ladder(&entangled_state(&model).unwrap(), &model).unwrap();
                let nf = n as f64;
                let per_mean = 1.3 * (nf - 1.0) / 2.0;
                let per_spread = 1.3 * (nf * nf - 1.0).sqrt() / (2.0 * 3f64.sqrt());
                assert!((s.mean_energy - m as f64 * per_mean).abs() < 1e-10);
                assert!((s.spread - m as f64 * per_spread).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let ladder = LadderModel::new(2, 3, 1.0).unwrap();
        let wrong = all_zero_state(2).unwrap();
        assert!(matches!(energy_stats_ladder(&wrong, &ladder), Err(Error::Shape(_))));
        let spin = SpinModel::free(3, 1.0).unwrap();
        assert!(matches!(energy_stats_spin(&wrong, &spin), Err(Error::Shape(_))));
    }

    #[test]
    fn composition_examples() {
        let c = separable_energy_composition(&[(1.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!((c.mean_energy, c.max_energy, c.max_spread), (2.0, 1.0, 1.0));
        assert!((c.spread - 2f64.sqrt()).abs() < 1e-15);
        let c = separable_energy_composition(&[(2.0, 0.0), (0.0, 3.0)]).unwrap();
        assert_eq!((c.mean_energy, c.spread, c.max_energy, c.max_spread), (2.0, 3.0, 2.0, 3.0));
        let homogeneous = vec![(0.7, 0.4); 9];
        let c = separable_energy_composition(&homogeneous).unwrap();
        assert!((c.mean_energy - 9.0 * 0.7).abs() < 1e-14);
        assert!((c.spread - 3.0 * 0.4).abs() < 1e-14);
        assert!(separable_energy_composition(&[]).is_err());
        assert!(separable_energy_composition(&[(-1.0, 0.0)]).is_err());
    }

    #[test]
    fn stats_validation() {
        assert!(EnergyStats::new(0.0, 1.0, -0.1).is_err());
        assert!(EnergyStats::new(1.0, 0.5, 0.1).is_err());
        assert!(EnergyStats::new(0.0, f64::INFINITY, 0.1).is_err());
    }
}
