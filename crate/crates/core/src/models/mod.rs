//! Hamiltonians, initial states and exact energy statistics.
//!
//! Two model families are covered:
//!
//! - [`LadderModel`]: M non-interacting parties, each with levels
//!   |n⟩ of energy nω₀, n = 0..N−1.
//! - [`SpinModel`]: M qubits with free terms ω₀(1 − σ_x^(i)) and K-body
//!   interaction terms ω(1 − S_j), S_j a product of σ_x over a group.
//!
//! Both Hamiltonians have zero ground-state energy.

mod energy;
mod states;
mod topology;

pub use energy::{
    energy_stats_ladder, energy_stats_spin, separable_energy_composition, EnergyStats,
    SeparableComposition,
};
pub use states::{all_zero_state, entangled_state, plus_state, product_state, DIM_BUDGET};
pub use topology::{
    build_polygon_topology, is_valid_polygon, polygon_group_count, qubit_bit, valid_polygons,
    validate_topology, InteractionTopology, TopologyCheck, TopologyValidation,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_frequency(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidParameters(format!("{name} = {value} must be finite and >= 0")));
    }
    Ok(())
}

/// Qubits with free σ_x rotations and optional K-body σ_x couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinModel {
    num_qubits: usize,
    topology: Option<InteractionTopology>,
    omega0: f64,
    omega: f64,
}

impl SpinModel {
    pub fn new(topology: InteractionTopology, omega0: f64, omega: f64) -> Result<Self> {
        check_frequency("omega0", omega0)?;
        check_frequency("omega", omega)?;
        if omega0 == 0.0 && omega == 0.0 {
            return Err(Error::InvalidParameters("omega0 and omega are both zero".into()));
        }
        Ok(Self { num_qubits: topology.num_qubits(), topology: Some(topology), omega0, omega })
    }

    /// Non-interacting qubits, H = Σ ω₀(1 − σ_x^(i)).
    pub fn free(num_qubits: usize, omega0: f64) -> Result<Self> {
        check_frequency("omega0", omega0)?;
        if num_qubits == 0 {
            return Err(Error::InvalidParameters("M must be at least 1".into()));
        }
        if omega0 == 0.0 {
            return Err(Error::InvalidParameters("omega0 must be positive for a free model".into()));
        }
        Ok(Self { num_qubits, topology: None, omega0, omega: 0.0 })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn topology(&self) -> Option<&InteractionTopology> {
        self.topology.as_ref()
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn num_groups(&self) -> usize {
        self.topology.as_ref().map_or(0, |t| t.num_groups())
    }

    pub fn group_masks(&self) -> Vec<usize> {
        self.topology.as_ref().map_or_else(Vec::new, |t| t.group_masks())
    }

    /// Largest eigenvalue minus the ground energy; bounds every frequency in P(t).
    pub fn spectral_width(&self) -> f64 {
        2.0 * (self.omega0 * self.num_qubits as f64 + self.omega * self.num_groups() as f64)
    }

    /// Eigenvalues of H on the σ_x product basis, indexed like the state.
    ///
    /// Bit set means |−⟩ on that qubit: E_k = 2ω₀·popcount(k) + 2ω·#{j : k·S_j odd}.
    pub fn x_basis_energies(&self) -> Vec<f64> {
        let masks = self.group_masks();
        (0..1usize << self.num_qubits)
            .map(|k| {
                let flipped = k.count_ones() as f64;
                let odd = masks.iter().filter(|&&m| (k & m).count_ones() % 2 == 1).count() as f64;
                2.0 * self.omega0 * flipped + 2.0 * self.omega * odd
            })
            .collect()
    }
}

/// M non-interacting parties with N equally spaced levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderModel {
    num_parties: usize,
    num_levels: usize,
    omega0: f64,
}

impl LadderModel {
    pub fn new(num_parties: usize, num_levels: usize, omega0: f64) -> Result<Self> {
        if num_parties == 0 {
            return Err(Error::InvalidParameters("M must be at least 1".into()));
        }
        if num_levels < 2 {
            return Err(Error::InvalidParameters(format!("N = {num_levels} must be at least 2")));
        }
        check_frequency("omega0", omega0)?;
        Ok(Self { num_parties, num_levels, omega0 })
    }

    pub fn num_parties(&self) -> usize {
        self.num_parties
    }

    pub fn num_levels(&self) -> usize {
        self.num_levels
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// N^M, or `None` on overflow.
    pub fn hilbert_dim(&self) -> Option<usize> {
        (0..self.num_parties).try_fold(1usize, |acc, _| acc.checked_mul(self.num_levels))
    }

    pub fn spectral_width(&self) -> f64 {
        (self.num_levels - 1) as f64 * self.num_parties as f64 * self.omega0
    }

    /// ω₀·Σ n_i for every basis index.
    pub fn level_energies(&self) -> Option<Vec<f64>> {
        let dim = self.hilbert_dim()?;
        let n = self.num_levels;
        let mut sums = vec![0usize; dim];
        // digit sum of k in base N, built from k / N
        for k in 1..dim {
            sums[k] = sums[k / n] + k % n;
        }
        Some(sums.into_iter().map(|s| s as f64 * self.omega0).collect())
    }
}
