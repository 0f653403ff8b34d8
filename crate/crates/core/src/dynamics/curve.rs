use serde::{Deserialize, Serialize};

use crate::csv::format_sci17;
use crate::error::{Error, Result};

/// Sampled survival probability P(t).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivalCurve {
    pub descriptor: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl SurvivalCurve {
    /// Samples `source` at `times`, which must be ascending.
    pub fn sample(
        descriptor: impl Into<String>,
        times: Vec<f64>,
        source: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if times.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(Error::InvalidParameters("sample times must be strictly ascending".into()));
        }
        let mut values = Vec::with_capacity(times.len());
        for &t in &times {
            let p = source(t);
            if !p.is_finite() {
                return Err(Error::Numeric { t, value: p });
            }
            values.push(p.clamp(0.0, 1.0));
        }
        Ok(Self { descriptor: descriptor.into(), times, values })
    }

    /// `count` evenly spaced points on [0, horizon].
    pub fn uniform_times(horizon: f64, count: usize) -> Vec<f64> {
        if count < 2 {
            return vec![0.0];
        }
        (0..count).map(|i| horizon * i as f64 / (count - 1) as f64).collect()
    }

    /// CSV with header `t,P`, 17 significant digits in scientific notation, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,P\n");
        for (t, p) in self.times.iter().zip(&self.values) {
            out.push_str(&format_sci17(*t));
            out.push(',');
            out.push_str(&format_sci17(*p));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(descriptor: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("t,P") {
            return Err(Error::Validation("missing `t,P` header".into()));
        }
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (i, line) in lines.enumerate() {
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Validation(format!("bad CSV row {}: {line:?}", i + 2)))
            };
            let mut fields = line.split(',');
            times.push(parse(fields.next())?);
            values.push(parse(fields.next())?);
        }
        Ok(Self { descriptor: descriptor.into(), times, values })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn csv_layout() {
        let curve = SurvivalCurve::sample("cos2", vec![0.0, 0.5], |t: f64| t.cos().powi(2)).unwrap();
        let csv = curve.to_csv();
        assert!(csv.starts_with("t,P\n0.0000000000000000e+00,1.0000000000000000e+00\n"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SurvivalCurve::sample("x", vec![1.0, 0.5], |_| 1.0).is_err());
        assert!(matches!(
            SurvivalCurve::sample("x", vec![0.0], |_| f64::NAN),
            Err(Error::Numeric { .. })
        ));
        assert!(SurvivalCurve::from_csv("x", "a,b\n").is_err());
        assert!(SurvivalCurve::from_csv("x", "t,P\n1.0\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_exact(points in prop::collection::vec((0.0f64..1e3, 0.0f64..=1.0), 1..40)) {
            let mut times: Vec<f64> = points.iter().map(|p| p.0).collect();
            times.sort_by(f64::total_cmp);
            times.dedup();
            let values: Vec<f64> = points.iter().take(times.len()).map(|p| p.1).collect();
            let curve = SurvivalCurve { descriptor: "p".into(), times, values };
            let back = SurvivalCurve::from_csv("p", &curve.to_csv()).unwrap();
            prop_assert_eq!(back, curve);
        }
    }
}
