//! Exact time evolution, closed-form survival probabilities and the
//! minimum-time solver.

mod closed_form;
mod curve;
mod evolve;
mod solver;

pub use closed_form::{
    orthogonality_classification, survival_entangled_closed_form,
    survival_ising_strong_closed_form, OrthogonalityClass,
};
pub use curve::SurvivalCurve;
pub use evolve::{evolve_ladder, evolve_spin, evolve_spin_oracle};
pub use solver::{min_time_to_survival, MinTimeResult, SolverOptions, SolverStatus};
