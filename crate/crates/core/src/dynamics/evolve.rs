use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{walsh_hadamard, QuantumState};
use crate::models::{qubit_bit, LadderModel, SpinModel};

fn check_qubits(state: &QuantumState, num_qubits: usize) -> Result<()> {
    if state.num_subsystems() != num_qubits || state.dims().iter().any(|&d| d != 2) {
        return Err(Error::Shape(format!(
            "state dims {:?}, expected {num_qubits} qubits",
            state.dims()
        )));
    }
    Ok(())
}

/// Applies cos θ + i X_mask sin θ, X_mask the product of σ_x over the set bits.
fn rotate(amps: &mut [Complex64], mask: usize, theta: f64) {
    debug_assert!(mask != 0);
    let low = mask & mask.wrapping_neg();
    let (s, c) = theta.sin_cos();
    let is = Complex64::new(0.0, s);
    for k in 0..amps.len() {
        if k & low != 0 {
            continue;
        }
        let p = k ^ mask;
        let (a, b) = (amps[k], amps[p]);
        amps[k] = a * c + b * is;
        amps[p] = b * c + a * is;
    }
}

/// e^{−iHt}|ψ⟩ for the spin model, as a product of commuting rotations.
///
/// Each free term contributes e^{−iω₀t}(cos ω₀t + iσ_x sin ω₀t) and each
/// interaction term e^{−iωt}(cos ωt + iS_j sin ωt).
pub fn evolve_spin(state: &QuantumState, model: &SpinModel, t: f64) -> Result<QuantumState> {
    let m = model.num_qubits();
    check_qubits(state, m)?;
    let mut amps = state.amplitudes().to_vec();
    if model.omega0() != 0.0 {
        for q in 1..=m {
            rotate(&mut amps, qubit_bit(m, q), model.omega0() * t);
        }
    }
    if model.omega() != 0.0 {
        for mask in model.group_masks() {
            rotate(&mut amps, mask, model.omega() * t);
        }
    }
    let phase = (model.omega0() * m as f64 + model.omega() * model.num_groups() as f64) * t;
    let global = Complex64::from_polar(1.0, -phase);
    amps.iter_mut().for_each(|a| *a *= global);
    Ok(QuantumState::from_unitary_image(state.dims().to_vec(), amps))
}

/// Reference evolution by diagonalization: H is diagonal in the σ_x product
/// basis, so transform, apply e^{−iE_k t}, transform back.
pub fn evolve_spin_oracle(state: &QuantumState, model: &SpinModel, t: f64) -> Result<QuantumState> {
    check_qubits(state, model.num_qubits())?;
    let mut amps = state.amplitudes().to_vec();
    walsh_hadamard(&mut amps);
    for (a, e) in amps.iter_mut().zip(model.x_basis_energies()) {
        *a *= Complex64::from_polar(1.0, -e * t);
    }
    walsh_hadamard(&mut amps);
    Ok(QuantumState::from_unitary_image(state.dims().to_vec(), amps))
}

/// Free ladder evolution: amplitude (n₁,…,n_M) picks up e^{−iω₀tΣnᵢ}.
pub fn evolve_ladder(state: &QuantumState, model: &LadderModel, t: f64) -> Result<QuantumState> {
    let (n, m) = (model.num_levels(), model.num_parties());
    if state.num_subsystems() != m || state.dims().iter().any(|&d| d != n) {
        return Err(Error::Shape(format!(
            "state dims {:?}, expected {m} parties with {n} levels",
            state.dims()
        )));
    }
    let energies = model
        .level_energies()
        .ok_or_else(|| Error::Shape("ladder dimension overflow".into()))?;
    let amps = state
        .amplitudes()
        .iter()
        .zip(energies)
        .map(|(&a, e)| a * Complex64::from_polar(1.0, -e * t))
        .collect();
    Ok(QuantumState::from_unitary_image(state.dims().to_vec(), amps))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::linalg::survival_probability;
    use crate::models::{all_zero_state, build_polygon_topology, entangled_state, plus_state};

    fn max_diff(a: &QuantumState, b: &QuantumState) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn test_state(m: usize) -> QuantumState {
        let amps = (0..1usize << m)
            .map(|k| Complex64::new((k as f64 * 0.91).sin(), (k as f64 * 0.37 + 0.2).cos()))
            .collect();
        QuantumState::new(vec![2; m], amps).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let model = SpinModel::new(build_polygon_topology(6, 3).unwrap(), 0.4, 1.1).unwrap();
        let s = test_state(6);
        assert!(max_diff(&evolve_spin(&s, &model, 0.0).unwrap(), &s) < 1e-15);
        assert!(max_diff(&evolve_spin_oracle(&s, &model, 0.0).unwrap(), &s) < 1e-14);
    }

    #[test]
    fn single_spin_half_rotation() {
        let model = SpinModel::free(1, 2.0).unwrap();
        let zero = all_zero_state(1).unwrap();
        let out = evolve_spin(&zero, &model, PI / 4.0).unwrap();
        assert!(out.amplitudes()[0].norm() < 1e-15);
        assert!((out.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
        assert!(survival_probability(&zero, &out).unwrap() < 1e-30);
    }

    #[test]
    fn forward_then_backward() {
        let model = SpinModel::new(build_polygon_topology(12, 4).unwrap(), 0.3, 1.0).unwrap();
        let s = test_state(12);
        let back = evolve_spin(&evolve_spin(&s, &model, 2.7).unwrap(), &model, -2.7).unwrap();
        assert!(max_diff(&back, &s) < 1e-12);
    }

    #[test]
    fn oracle_agrees_elementwise() {
        let model = SpinModel::new(build_polygon_topology(6, 2).unwrap(), 0.25, 1.0).unwrap();
        let s = test_state(6);
        for &t in &[0.1, 0.785, 3.3, 17.0] {
            let fast = evolve_spin(&s, &model, t).unwrap();
            let slow = evolve_spin_oracle(&s, &model, t).unwrap();
            assert!(max_diff(&fast, &slow) < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn ground_state_is_stationary() {
        let model = SpinModel::new(build_polygon_topology(6, 3).unwrap(), 0.7, 1.3).unwrap();
        let plus = plus_state(6).unwrap();
        for &t in &[0.3, 5.0] {
            assert!(max_diff(&evolve_spin_oracle(&plus, &model, t).unwrap(), &plus) < 1e-14);
            assert!(max_diff(&evolve_spin(&plus, &model, t).unwrap(), &plus) < 1e-14);
        }
    }

    #[test]
    fn ladder_half_period() {
        let model = LadderModel::new(1, 2, 1.0).unwrap();
        let ent = entangled_state(&model).unwrap();
        let out = evolve_ladder(&ent, &model, PI).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - Complex64::new(-h, 0.0)).norm() < 1e-15);
        assert!(survival_probability(&ent, &out).unwrap() < 1e-30);
    }

    #[test]
    fn ladder_energy_shift_only_changes_phase() {
        let model = LadderModel::new(2, 3, 1.0).unwrap();
        let ent = entangled_state(&model).unwrap();
        let t = 0.83;
        let out = evolve_ladder(&ent, &model, t).unwrap();
        // H + c·1 multiplies every amplitude by e^{−ict}
        let shifted = QuantumState::new(
            out.dims().to_vec(),
            out.amplitudes().iter().map(|a| a * Complex64::from_polar(1.0, -4.2 * t)).collect(),
        )
        .unwrap();
        let p = survival_probability(&ent, &out).unwrap();
        let q = survival_probability(&ent, &shifted).unwrap();
        assert!((p - q).abs() < 1e-15);
    }

    #[test]
    fn shape_errors() {
        let model = SpinModel::free(3, 1.0).unwrap();
        let wrong = all_zero_state(2).unwrap();
        assert!(matches!(evolve_spin(&wrong, &model, 1.0), Err(Error::Shape(_))));
        assert!(matches!(evolve_spin_oracle(&wrong, &model, 1.0), Err(Error::Shape(_))));
        let ladder = LadderModel::new(2, 3, 1.0).unwrap();
        assert!(matches!(evolve_ladder(&wrong, &ladder, 1.0), Err(Error::Shape(_))));
    }

    #[test]
    fn free_qubits_survival_is_cos_power() {
        let m = 4;
        let model = SpinModel::free(m, 1.0).unwrap();
        let zero = all_zero_state(m).unwrap();
        for &t in &[0.2, 0.9, FRAC_PI_2 - 0.01] {
            let p = survival_probability(&zero, &evolve_spin(&zero, &model, t).unwrap()).unwrap();
            assert!((p - t.cos().powi(2 * m as i32)).abs() < 1e-14);
        }
    }
}
