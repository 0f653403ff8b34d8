use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

/// In-place normalized Walsh-Hadamard transform, H^{⊗M} with H = (X + Z)/√2.
///
/// Maps amplitudes in the σ_z product basis to amplitudes in the σ_x product
/// basis; bit `b` of the output index is 1 where that qubit is in |−⟩.
/// The transform is its own inverse.
///
/// Panics if the length is not a power of two.
pub fn walsh_hadamard(data: &mut [Complex64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "length {n} is not a power of two");
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }
        half *= 2;
    }
}
