//! Dense complex linear algebra for small Hilbert spaces.

mod density;
mod state;
mod walsh;

pub use density::{fidelity, hermitian_eig, matrix_sqrt_psd, CMatrix, DensityMatrix, HermitianEig};
pub use state::{inner_product, survival_probability, QuantumState, NORM_TOL};
pub use walsh::walsh_hadamard;

pub use num_complex::Complex64;
