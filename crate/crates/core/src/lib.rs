//! Exact simulation and speed-limit bounds for small composite quantum systems.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense state vectors, density matrices, Hermitian
//!   eigendecomposition, PSD square roots and the Uhlmann fidelity.
//! - [`models`]: the non-interacting ladder system, the K-body σ_x
//!   interaction model on polygon topologies, initial states and exact
//!   energy statistics.
//! - [`speedlimit`]: closed-form bound times (mean-energy and spread
//!   branches) and model-specific predictions.
//! - [`dynamics`]: exact time evolution, closed-form survival
//!   probabilities and the minimum-time solver.
//!
//! Units: ħ = 1 everywhere. Frequencies are angular frequencies in
//! reciprocal time units and energies are expressed in the same units.

#![forbid(unsafe_code)]

pub mod csv;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod models;
pub mod speedlimit;

pub use error::{Error, Result};
