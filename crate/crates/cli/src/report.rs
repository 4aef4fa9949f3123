//! Machine-readable reports.
//!
//! Field order is fixed by struct order, value maps are sorted, and every
//! float passes through [`round12`], so equal inputs serialize to equal bytes.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: &str = "1";

/// Rounds to 12 significant digits. Non-finite values pass through and are
/// written as `null`.
pub fn round12(v: f64) -> f64 {
    if v.is_finite() {
        format!("{v:.11e}").parse().unwrap_or(v)
    } else {
        v
    }
}

fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(round12(*v))
    } else {
        s.serialize_none()
    }
}

fn ser_opt_f64<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Value(#[serde(serialize_with = "ser_f64")] pub f64);

/// One executed check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub values: BTreeMap<String, Value>,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `metric < tolerance`; `metric` is stored under `key`.
    pub fn below(name: impl Into<String>, key: &str, metric: f64, tolerance: f64) -> Self {
        Self::new(name, tolerance, metric < tolerance).with(key, metric)
    }

    pub fn new(name: impl Into<String>, tolerance: f64, passed: bool) -> Self {
        Check {
            name: name.into(),
            values: BTreeMap::new(),
            tolerance,
            passed,
            note: None,
        }
    }

    /// A failure caused by an error rather than a missed tolerance.
    pub fn failed(name: impl Into<String>, tolerance: f64, why: impl ToString) -> Self {
        let mut c = Self::new(name, tolerance, false);
        c.note = Some(why.to_string());
        c
    }

    pub fn with(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.to_string(), Value(v));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(serialize_with = "ser_opt_f64")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str, config: RunConfig, checks: Vec<Check>, wall_time_s: Option<f64>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            config,
            summary: Summary {
                passed,
                failed: checks.len() - passed,
            },
            checks,
            wall_time_s,
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    /// Long format: one row per (check, value) pair; checks without values
    /// get a single row with an empty key.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,key,value,tolerance,passed\n");
        for c in &self.checks {
            let tol = fmt_csv(c.tolerance);
            if c.values.is_empty() {
                out += &format!("{},,,{tol},{}\n", c.name, c.passed);
            }
            for (k, v) in &c.values {
                out += &format!("{},{k},{},{tol},{}\n", c.name, fmt_csv(v.0), c.passed);
            }
        }
        out
    }
}

/// CSV cell for a float: 12 significant digits, empty when non-finite.
pub fn fmt_csv(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&round12(v)).expect("finite floats serialize")
    } else {
        String::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(1.234_567_890_123_456), 1.234_567_890_12);
        assert_eq!(round12(-2.5e-17), -2.5e-17);
        assert!(round12(f64::NAN).is_nan());
    }

    #[test]
    fn non_finite_values_become_null() {
        let c = Check::below("x", "v", f64::INFINITY, 1.0);
        let j = serde_json::to_value(&c).unwrap();
        assert!(j["values"]["v"].is_null());
        assert_eq!(j["passed"], false);
    }
}
