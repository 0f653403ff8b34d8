use num_complex::Complex64;

use crate::error::{Error, Result};

/// Allowed deviation of ‖ψ‖₂ from one.
pub const NORM_TOL: f64 = 1e-12;

/// A normalized pure state over a tensor-product basis.
///
/// Basis indices are row-major over `dims`: the first subsystem is the most
/// significant digit. For qubits, subsystem `i` (1-based) is bit `M - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Builds a state from raw amplitudes, normalizing them.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let total = total_dim(&dims)?;
        if amplitudes.len() != total {
            return Err(Error::Shape(format!(
                "{} amplitudes for dims {:?} (expected {})",
                amplitudes.len(),
                dims,
                total
            )));
        }
        let norm = l2_norm(&amplitudes);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Validation(format!("cannot normalize amplitudes with norm {norm}")));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { dims, amplitudes })
    }

    /// Computational basis state `index`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total = total_dim(&dims)?;
        if index >= total {
            return Err(Error::Shape(format!("basis index {index} out of range for dimension {total}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); total];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amplitudes })
    }

    /// Wraps amplitudes produced by a unitary map of an existing state.
    pub(crate) fn from_unitary_image(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), dims.iter().product::<usize>());
        Self { dims, amplitudes }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        inner_product(self, other)
    }
}

fn total_dim(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Shape(format!("invalid subsystem dimensions {dims:?}")));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::Shape(format!("dimension overflow for {dims:?}")))
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_same_shape(a: &QuantumState, b: &QuantumState) -> Result<()> {
    if a.dims != b.dims {
        return Err(Error::Shape(format!("dims {:?} vs {:?}", a.dims, b.dims)));
    }
    Ok(())
}

/// ⟨a|b⟩, conjugate-linear in `a`.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<Complex64> {
    check_same_shape(a, b)?;
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// |⟨a|b⟩|² clamped to [0, 1].
pub fn survival_probability(a: &QuantumState, b: &QuantumState) -> Result<f64> {
    Ok(inner_product(a, b)?.norm_sqr().clamp(0.0, 1.0))
}
