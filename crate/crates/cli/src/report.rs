//! Verification reports: JSON documents with every number rounded to 15
//! significant digits, plus optional CSV grid samples.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use besselsub_core::geometry::{LadderReport, SubordinationVerdict};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Parameters, Scenario};
use crate::error::CliError;

pub const TOOL: &str = "besselsub";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, and listed under `expected_fail`.
    ExpectedFail,
    /// A conclusion whose premise failed; the implication holds vacuously.
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Raw outcome of the check, before expected-fail and vacuity labels.
    pub passed: bool,
    pub detail: Value,
}

/// Checks in the order they were run.
#[derive(Clone, Debug, Default)]
pub struct CheckList {
    checks: Vec<Check>,
    vacuous: BTreeSet<String>,
}

impl CheckList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.checks.push(Check {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            passed,
            detail,
        });
    }

    /// Pushes a conclusion check, labelled vacuous when `premise_holds` is
    /// false.
    pub fn push_conclusion(
        &mut self,
        name: impl Into<String>,
        premise_holds: bool,
        passed: bool,
        detail: Value,
    ) {
        let name = name.into();
        if !premise_holds {
            self.vacuous.insert(name.clone());
        }
        self.push(name, passed, detail);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }
}

/// One row of the optional CSV output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub z: Complex64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: Scenario,
    pub config: Parameters,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
    /// Name of the functional sampled into [`Self::samples`].
    #[serde(skip)]
    pub sample_functional: &'static str,
    #[serde(skip)]
    pub samples: Vec<Sample>,
}

impl VerificationReport {
    /// Applies the expected-fail list and computes the overall verdict: the
    /// report passes when no check has status `fail`.
    pub fn assemble(
        scenario: Scenario,
        config: Parameters,
        list: CheckList,
        notes: Vec<String>,
        sample_functional: &'static str,
        samples: Vec<Sample>,
    ) -> Result<Self, CliError> {
        let CheckList {
            mut checks,
            vacuous,
        } = list;
        for name in &config.expected_fail {
            if !checks.iter().any(|c| &c.name == name) {
                return Err(CliError::Config(format!(
                    "expected_fail names `{name}`, which is not a check of {scenario}"
                )));
            }
        }
        for check in &mut checks {
            check.status = if vacuous.contains(&check.name) {
                Status::Vacuous
            } else if check.passed {
                Status::Pass
            } else if config.expected_fail.contains(&check.name) {
                Status::ExpectedFail
            } else {
                Status::Fail
            };
        }
        let pass = checks.iter().all(|c| c.status != Status::Fail);
        Ok(Self {
            tool: TOOL,
            version: VERSION,
            scenario,
            config,
            pass,
            checks,
            notes,
            runtime_seconds: None,
            sample_functional,
            samples,
        })
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).unwrap_or(Value::Null);
        round_numbers(&mut value);
        let mut text = serde_json::to_string_pretty(&value).unwrap_or_default();
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {}\nre_z,im_z,value\n", self.sample_functional);
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{},{},{}",
                sig15(s.z.re),
                sig15(s.z.im),
                sig15(s.value)
            );
        }
        out
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        write_file(path, &self.to_json())
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        write_file(path, &self.to_csv())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// Rounds every floating-point number in `value` to 15 significant digits.
pub fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .map(round15)
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn verdict_json(v: &SubordinationVerdict) -> Value {
    json!({
        "outcome": v.outcome,
        "margin": v.margin,
        "witness": complex_json(v.witness),
        "witness_image": complex_json(v.witness_image),
    })
}

/// Ladder verdicts. `target_rho` gives the radius used for the dominating
/// function at each rung.
pub fn ladder_json(report: &LadderReport, target_rho: impl Fn(f64) -> f64) -> Value {
    let rungs: Vec<Value> = report
        .rungs
        .iter()
        .map(|(rho, v)| {
            let mut entry = verdict_json(v);
            entry["rho"] = json!(rho);
            entry["target_rho"] = json!(target_rho(*rho));
            entry
        })
        .collect();
    json!({ "rungs": rungs, "stable": report.stable })
}
