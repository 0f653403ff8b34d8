use serde::Serialize;
use serde_json::Value;

use crate::config::ExperimentConfig;

/// One internal validation: what was measured, what was expected, how close
/// it had to be.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: Option<f64>,
}

impl Check {
    /// |measured − expected| ≤ tol.
    pub fn close(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            pass: (measured - expected).abs() <= tol,
            measured: measured.into(),
            expected: expected.into(),
            tolerance: Some(tol),
        }
    }

    /// |measured/expected − 1| ≤ tol.
    pub fn relative(name: impl Into<String>, measured: f64, expected: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            pass: (measured / expected - 1.0).abs() <= tol,
            measured: measured.into(),
            expected: expected.into(),
            tolerance: Some(tol),
        }
    }

    /// measured ≤ bound + tol.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured <= bound + tol,
            measured: measured.into(),
            expected: bound.into(),
            tolerance: Some(tol),
        }
    }

    pub fn flag(name: impl Into<String>, measured: impl Into<Value>, expected: impl Into<Value>) -> Self {
        let (measured, expected) = (measured.into(), expected.into());
        Self { name: name.into(), pass: measured == expected, measured, expected, tolerance: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T> {
    pub config: ExperimentConfig,
    pub results: T,
    pub checks: Vec<Check>,
}

impl<T: Serialize> Report<T> {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
