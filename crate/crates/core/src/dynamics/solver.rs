//! First time at which a survival probability reaches a target value.
//!
//! The curve is sampled on a uniform grid. For a positive target the first
//! downward crossing is bracketed and bisected. A zero target is never
//! crossed (P ≥ 0), so sampled local minima are refined in order by
//! golden-section search on √P, which is V-shaped at simple zeros and
//! locates them to near machine precision.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CHUNK: usize = 256;
const MAX_REFINE_ITERS: usize = 400;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub horizon: f64,
    pub grid_step: f64,
    pub value_tol: f64,
    pub time_tol: f64,
}

impl SolverOptions {
    pub const DEFAULT_VALUE_TOL: f64 = 1e-9;
    pub const SAMPLES_PER_PERIOD: f64 = 512.0;
    pub const PERIODS: f64 = 8.0;
    pub const RELATIVE_TIME_TOL: f64 = 1e-10;

    /// Defaults scaled to the fastest angular frequency `omega_max` present in
    /// P(t): 512 samples per period 2π/ω_max over 8 periods.
    pub fn for_frequency(omega_max: f64) -> Result<Self> {
        if !(omega_max > 0.0 && omega_max.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "characteristic frequency {omega_max} must be positive"
            )));
        }
        let period = TAU / omega_max;
        Ok(Self::with_horizon(Self::PERIODS * period, period / Self::SAMPLES_PER_PERIOD))
    }

    pub fn with_horizon(horizon: f64, grid_step: f64) -> Self {
        Self {
            horizon,
            grid_step,
            value_tol: Self::DEFAULT_VALUE_TOL,
            time_tol: Self::RELATIVE_TIME_TOL * horizon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!("{name} = {v} must be positive")))
            }
        };
        positive("horizon", self.horizon)?;
        positive("grid_step", self.grid_step)?;
        positive("value_tol", self.value_tol)?;
        positive("time_tol", self.time_tol)?;
        if self.horizon / self.grid_step > 1e8 {
            return Err(Error::InvalidParameters("more than 1e8 grid samples requested".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverStatus {
    Reached,
    NotReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinTimeResult {
    pub status: SolverStatus,
    /// First time with P = ε, when reached.
    pub time: Option<f64>,
    /// P at `time`, or the smallest P found when not reached.
    pub achieved_value: f64,
    /// Where `achieved_value` was observed.
    pub achieved_at: f64,
    pub horizon: f64,
    pub refinement_tolerance: f64,
}

impl MinTimeResult {
    pub fn reached(&self) -> bool {
        self.status == SolverStatus::Reached
    }
}

struct Probe<'a, F> {
    source: &'a F,
}

impl<F: Fn(f64) -> f64 + Sync> Probe<'_, F> {
    fn eval(&self, t: f64) -> Result<f64> {
        let p = (self.source)(t);
        if !p.is_finite() {
            return Err(Error::Numeric { t, value: p });
        }
        Ok(p.clamp(0.0, 1.0))
    }

    fn eval_many(&self, times: &[f64]) -> Result<Vec<f64>> {
        times.par_iter().map(|&t| self.eval(t)).collect()
    }

    /// Bisection of P − ε on [lo, hi] with P(lo) > ε ≥ P(hi).
    fn bisect(&self, mut lo: f64, mut hi: f64, mut p_hi: f64, epsilon: f64, opts: &SolverOptions) -> Result<(f64, f64)> {
        for _ in 0..MAX_REFINE_ITERS {
            if hi - lo <= opts.time_tol && (p_hi - epsilon).abs() <= opts.value_tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let p = self.eval(mid)?;
            if p > epsilon {
                lo = mid;
            } else {
                hi = mid;
                p_hi = p;
            }
        }
        Ok((hi, p_hi))
    }

    /// Golden-section minimization of √P on [a, b]; returns the best point seen.
    fn refine_min(&self, mut a: f64, mut b: f64, seed: (f64, f64), tol: f64) -> Result<(f64, f64)> {
        let mut best = seed;
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let mut f1 = self.eval(x1)?;
        let mut f2 = self.eval(x2)?;
        for _ in 0..MAX_REFINE_ITERS {
            for (x, f) in [(x1, f1), (x2, f2)] {
                if f < best.1 {
                    best = (x, f);
                }
            }
            if b - a <= tol || x1 >= x2 {
                break;
            }
            if f1.sqrt() <= f2.sqrt() {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = self.eval(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = self.eval(x2)?;
            }
        }
        Ok(best)
    }
}

/// First t ∈ (0, horizon] with P(t) = ε.
///
/// `source` must be a pure function of t; grid samples are evaluated in
/// parallel. Returns [`SolverStatus::NotReached`] with the smallest P found
/// when no crossing (ε > 0) or no vanishing local minimum (ε = 0) exists.
pub fn min_time_to_survival<F>(source: F, epsilon: f64, opts: &SolverOptions) -> Result<MinTimeResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    opts.validate()?;
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("target {epsilon} outside [0, 1)")));
    }
    let probe = Probe { source: &source };
    let steps = (opts.horizon / opts.grid_step).ceil() as usize;
    let time_at = |i: usize| if i >= steps { opts.horizon } else { i as f64 * opts.grid_step };
    let done = |time: f64, value: f64| MinTimeResult {
        status: SolverStatus::Reached,
        time: Some(time),
        achieved_value: value,
        achieved_at: time,
        horizon: opts.horizon,
        refinement_tolerance: opts.time_tol,
    };

    let mut values: Vec<f64> = Vec::with_capacity(steps + 1);
    let mut best = (0.0, f64::INFINITY);
    let mut best_sample = 0usize;

    for i in 0..=steps {
        let needed = (i + 1).min(steps) + 1;
        if values.len() < needed {
            let end = (values.len() + CHUNK).min(steps + 1).max(needed);
            let times: Vec<f64> = (values.len()..end).map(time_at).collect();
            values.extend(probe.eval_many(&times)?);
        }
        let p = values[i];
        if p < best.1 {
            best = (time_at(i), p);
            best_sample = i;
        }
        if i == 0 {
            if epsilon > 0.0 && p <= epsilon {
                return Ok(done(0.0, p));
            }
            continue;
        }
        if epsilon > 0.0 {
            if p <= epsilon {
                let (t, v) = probe.bisect(time_at(i - 1), time_at(i), p, epsilon, opts)?;
                return Ok(done(t, v));
            }
        } else if i < steps && p < values[i - 1] && p <= values[i + 1] {
            let found = probe.refine_min(time_at(i - 1), time_at(i + 1), (time_at(i), p), opts.time_tol)?;
            if found.1 < opts.value_tol {
                return Ok(done(found.0, found.1));
            }
            if found.1 < best.1 {
                best = found;
            }
        }
    }

    if epsilon > 0.0 && best_sample > 0 && best_sample < steps {
        let refined = probe.refine_min(
            time_at(best_sample - 1),
            time_at(best_sample + 1),
            best,
            opts.time_tol,
        )?;
        if refined.1 < best.1 {
            best = refined;
        }
    }

    Ok(MinTimeResult {
        status: SolverStatus::NotReached,
        time: None,
        achieved_value: best.1,
        achieved_at: best.0,
        horizon: opts.horizon,
        refinement_tolerance: opts.time_tol,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn opts(horizon: f64, step: f64) -> SolverOptions {
        SolverOptions::with_horizon(horizon, step)
    }

    #[test]
    fn cos_squared_zero() {
        for &w in &[0.5, 1.0, 3.0] {
            let o = SolverOptions::for_frequency(w).unwrap();
            let r = min_time_to_survival(|t: f64| (w * t).cos().powi(2), 0.0, &o).unwrap();
            assert!(r.reached());
            assert!((r.time.unwrap() - FRAC_PI_2 / w).abs() <= o.time_tol, "{r:?}");
            assert!(r.achieved_value < o.value_tol);
        }
    }

    #[test]
    fn positive_target_bisects() {
        let o = opts(4.0, 0.01);
        let r = min_time_to_survival(|t: f64| t.cos().powi(2), 0.5, &o).unwrap();
        assert!((r.time.unwrap() - PI / 4.0).abs() <= o.time_tol);
        assert!((r.achieved_value - 0.5).abs() <= o.value_tol);
    }

    #[test]
    fn stationary_never_reaches() {
        for eps in [0.0, 0.3, 0.99] {
            let r = min_time_to_survival(|_| 1.0, eps, &opts(10.0, 0.1)).unwrap();
            assert_eq!(r.status, SolverStatus::NotReached);
            assert_eq!(r.achieved_value, 1.0);
            assert!(r.time.is_none());
        }
    }

    #[test]
    fn positive_minimum_reported_refined() {
        // (cos⁴ + sin⁴)² has minimum 1/4 at π/4, off-grid here
        let f = |t: f64| (t.cos().powi(4) + t.sin().powi(4)).powi(2);
        let r = min_time_to_survival(f, 0.0, &opts(3.0, 0.0123)).unwrap();
        assert_eq!(r.status, SolverStatus::NotReached);
        assert!((r.achieved_value - 0.25).abs() < 1e-12);
        assert!((r.achieved_at - PI / 4.0).abs() < 1e-5);
        let r = min_time_to_survival(f, 0.1, &opts(3.0, 0.0123)).unwrap();
        assert!((r.achieved_value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn returns_first_of_several_zeros() {
        let r = min_time_to_survival(|t: f64| (3.0 * t).cos().powi(2), 0.0, &opts(10.0, 0.01)).unwrap();
        assert!((r.time.unwrap() - PI / 6.0).abs() < 1e-9);
    }

    #[test]
    fn high_order_zero_is_located() {
        let r = min_time_to_survival(|t: f64| t.cos().powi(18), 0.0, &opts(8.0, 0.01)).unwrap();
        assert!(r.reached());
        assert!((r.time.unwrap() - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            min_time_to_survival(|t| if t > 1.0 { f64::NAN } else { 1.0 }, 0.0, &opts(2.0, 0.1)),
            Err(Error::Numeric { .. })
        ));
        assert!(min_time_to_survival(|_| 1.0, 1.0, &opts(1.0, 0.1)).is_err());
        assert!(min_time_to_survival(|_| 1.0, 0.0, &opts(-1.0, 0.1)).is_err());
        assert!(min_time_to_survival(|_| 1.0, 0.0, &opts(1.0, 0.0)).is_err());
        assert!(SolverOptions::for_frequency(0.0).is_err());
    }

    #[test]
    fn defaults() {
        let o = SolverOptions::for_frequency(1.0).unwrap();
        assert!((o.horizon - 8.0 * TAU).abs() < 1e-12);
        assert!((o.grid_step - TAU / 512.0).abs() < 1e-15);
        assert_eq!(o.value_tol, 1e-9);
        assert!((o.time_tol - 1e-10 * o.horizon).abs() < 1e-24);
    }
}
