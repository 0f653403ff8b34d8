use std::f64::consts::{FRAC_PI_4, TAU};

use serde::{Deserialize, Serialize};

use crate::models::LadderModel;

/// Distance below which Mω₀t is treated as a multiple of 2π.
const FEJER_SINGULARITY: f64 = 1e-8;

/// |(1/N) Σₙ e^{−inMω₀t}|² for the maximally correlated ladder state,
/// evaluated as sin²(NMω₀t/2) / (N² sin²(Mω₀t/2)).
pub fn survival_entangled_closed_form(model: &LadderModel, t: f64) -> f64 {
    let n = model.num_levels() as f64;
    let x = model.num_parties() as f64 * model.omega0() * t;
    let r = x.rem_euclid(TAU);
    if r.min(TAU - r) < FEJER_SINGULARITY {
        return 1.0;
    }
    let num = (0.5 * n * x).sin();
    let den = n * (0.5 * x).sin();
    ((num * num) / (den * den)).clamp(0.0, 1.0)
}

/// |cos^Q(ωt) + i^Q sin^Q(ωt)|², the strong-coupling survival probability of
/// the all-zero state on a connected topology. i^Q is resolved from Q mod 4.
pub fn survival_ising_strong_closed_form(num_groups: usize, omega: f64, t: f64) -> f64 {
    let (s, c) = (omega * t).sin_cos();
    let q = num_groups as i32;
    let (cq, sq) = (c.powi(q), s.powi(q));
    let value = match num_groups % 4 {
        0 => (cq + sq) * (cq + sq),
        2 => (cq - sq) * (cq - sq),
        _ => cq * cq + sq * sq,
    };
    value.clamp(0.0, 1.0)
}

/// Whether the strong-coupling survival probability ever vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrthogonalityClass {
    #[serde(rename = "NeverZero_Odd")]
    NeverZeroOdd,
    #[serde(rename = "NeverZero_TwiceEven")]
    NeverZeroTwiceEven,
    #[serde(rename = "Zero_TwiceOdd")]
    ZeroTwiceOdd,
}

impl OrthogonalityClass {
    pub fn reaches_zero(self) -> bool {
        self == OrthogonalityClass::ZeroTwiceOdd
    }

    /// First zero π/(4ω), only for the twice-odd class.
    pub fn first_zero(self, omega: f64) -> Option<f64> {
        self.reaches_zero().then(|| FRAC_PI_4 / omega)
    }
}

pub fn orthogonality_classification(num_groups: usize) -> OrthogonalityClass {
    if num_groups % 2 == 1 {
        OrthogonalityClass::NeverZeroOdd
    } else if (num_groups / 2).is_multiple_of(2) {
        OrthogonalityClass::NeverZeroTwiceEven
    } else {
        OrthogonalityClass::ZeroTwiceOdd
    }
}
