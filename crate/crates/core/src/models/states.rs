use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::LadderModel;
use crate::error::{Error, Result};
use crate::linalg::QuantumState;

/// Largest Hilbert-space dimension any constructor will allocate.
pub const DIM_BUDGET: usize = 1 << 16;

fn check_budget(dim: Option<usize>, exact: u128) -> Result<usize> {
    match dim {
        Some(d) if d <= DIM_BUDGET => Ok(d),
        _ => Err(Error::Resource { dim: exact, budget: DIM_BUDGET }),
    }
}

fn qubit_dim(num_qubits: usize) -> Result<usize> {
    if num_qubits == 0 {
        return Err(Error::InvalidParameters("M must be at least 1".into()));
    }
    let exact = if num_qubits < 128 { 1u128 << num_qubits } else { u128::MAX };
    check_budget(1usize.checked_shl(num_qubits as u32), exact)
}

/// |0⟩ ⊗ ⋯ ⊗ |0⟩ on M qubits.
pub fn all_zero_state(num_qubits: usize) -> Result<QuantumState> {
    qubit_dim(num_qubits)?;
    QuantumState::basis(vec![2; num_qubits], 0)
}

/// |+⟩ ⊗ ⋯ ⊗ |+⟩, the zero-energy ground state of the spin model.
pub fn plus_state(num_qubits: usize) -> Result<QuantumState> {
    let dim = qubit_dim(num_qubits)?;
    let amp = Complex64::new(FRAC_1_SQRT_2.powi(num_qubits as i32), 0.0);
    QuantumState::new(vec![2; num_qubits], vec![amp; dim])
}

/// Tensor product of the factors, first factor most significant.
pub fn product_state(factors: &[QuantumState]) -> Result<QuantumState> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidParameters("product of zero factors".into()))?;
    let exact = factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.dim() as u128));
    check_budget(
        factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.dim())),
        exact,
    )?;
    let mut dims = first.dims().to_vec();
    let mut amps = first.amplitudes().to_vec();
    for factor in &factors[1..] {
        dims.extend_from_slice(factor.dims());
        amps = amps
            .iter()
            .flat_map(|&a| factor.amplitudes().iter().map(move |&b| a * b))
            .collect();
    }
    QuantumState::new(dims, amps)
}

/// (1/√N) Σₙ |n⟩ ⊗ ⋯ ⊗ |n⟩ over M parties.
pub fn entangled_state(model: &LadderModel) -> Result<QuantumState> {
    let n = model.num_levels();
    let m = model.num_parties();
    let exact = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    let dim = check_budget(model.hilbert_dim(), exact)?;
    // index of (k, k, …, k) is k·(N^M − 1)/(N − 1)
    let stride = (dim - 1) / (n - 1);
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for k in 0..n {
        amps[k * stride] = amp;
    }
    QuantumState::new(vec![n; m], amps)
}
