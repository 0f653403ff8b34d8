use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::QuantumState;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Elementwise Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues above `-PSD_CLAMP` are clamped to zero before square roots.
pub const PSD_CLAMP: f64 = 1e-8;

const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
const DENSITY_TRACE_TOL: f64 = 1e-12;
const DENSITY_MIN_EIGENVALUE: f64 = -1e-10;

/// Spectral decomposition `m = V diag(λ) V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> CMatrix {
        self.map_eigenvalues(|l| l)
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            let w = f(l);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= w);
        }
        scaled * v.adjoint()
    }
}

fn max_hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    check_square(m)?;
    let defect = max_hermitian_defect(m);
    if defect > HERMITIAN_TOL {
        return Err(Error::Validation(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    let eig = SymmetricEigen::new(hermitize(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Principal square root of a Hermitian PSD matrix.
pub fn matrix_sqrt_psd(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eig(m)?;
    psd_sqrt_from_eig(&eig)
}

/// Eigenvalues at or below the solver's backward error, 16·n·ε·max|λ|,
/// carry no information and are treated as zero.
fn noise_floor(eigenvalues: &[f64]) -> f64 {
    let scale = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    16.0 * eigenvalues.len() as f64 * f64::EPSILON * scale
}

fn psd_root(eigenvalues: &[f64]) -> Result<impl Fn(f64) -> f64> {
    if let Some(&min) = eigenvalues.first() {
        if min < -PSD_CLAMP {
            return Err(Error::NotPsd(min));
        }
    }
    let floor = noise_floor(eigenvalues);
    Ok(move |l: f64| if l <= floor { 0.0 } else { l.sqrt() })
}

fn psd_sqrt_from_eig(eig: &HermitianEig) -> Result<CMatrix> {
    let root = psd_root(&eig.eigenvalues)?;
    Ok(eig.map_eigenvalues(root))
}

/// A validated density operator: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        if entries.nrows() == 0 {
            return Err(Error::Shape("empty density matrix".into()));
        }
        let defect = max_hermitian_defect(&entries);
        if defect > DENSITY_HERMITIAN_TOL {
            return Err(Error::Validation(format!("density matrix not Hermitian (defect {defect:e})")));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > DENSITY_TRACE_TOL || trace.im.abs() > DENSITY_TRACE_TOL {
            return Err(Error::Validation(format!("trace {trace} is not 1")));
        }
        let eig = hermitian_eig(&entries)?;
        let min = eig.eigenvalues[0];
        if min < DENSITY_MIN_EIGENVALUE {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { entries })
    }

    /// Symmetrizes and trace-normalizes a PSD matrix before validating it.
    pub fn from_psd(m: &CMatrix) -> Result<Self> {
        check_square(m)?;
        let h = hermitize(m);
        let trace = h.trace().re;
        if trace.is_nan() || trace <= 0.0 {
            return Err(Error::Validation(format!("trace {trace} is not positive")));
        }
        Self::new(h / Complex64::new(trace, 0.0))
    }

    /// |ψ⟩⟨ψ|.
    pub fn from_pure(state: &QuantumState) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        let entries = &v * v.adjoint();
        Self { entries: hermitize(&entries) }
    }

    /// diag(p), with `p` a probability vector.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let diag: Vec<Complex64> = probabilities.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        Self::new(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }
}

/// Uhlmann fidelity {Tr √(√ρ σ √ρ)}², clamped to [0, 1].
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape(format!("density dims {} vs {}", rho.dim(), sigma.dim())));
    }
    let sqrt_rho = matrix_sqrt_psd(&rho.entries)?;
    let inner = hermitize(&(&sqrt_rho * &sigma.entries * &sqrt_rho));
    let eig = hermitian_eig(&inner)?;
    let root = psd_root(&eig.eigenvalues)?;
    let root_trace: f64 = eig.eigenvalues.iter().map(|&l| root(l)).sum();
    Ok((root_trace * root_trace).clamp(0.0, 1.0))
}
