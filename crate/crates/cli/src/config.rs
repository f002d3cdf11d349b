//! Scenario configuration files.
//!
//! A configuration names one scenario and overrides any subset of the shared
//! parameter set; everything else takes the documented default. Unknown keys
//! are rejected. The fully resolved parameter set is echoed into every
//! report.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use besselsub_core::bessel::BesselParameters;
use besselsub_core::geometry::{DEFAULT_LADDER, MIN_CURVE_SAMPLES};
use besselsub_core::{EvaluationGrid, PowerSeries, DEFAULT_ORDER};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::presets::FunctionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Theorem1,
    CorollaryLambda0,
    TrigChain,
    LiberaSandwich,
    IdentitySuite,
    ConditionSweep,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::Theorem1,
        Scenario::CorollaryLambda0,
        Scenario::TrigChain,
        Scenario::LiberaSandwich,
        Scenario::IdentitySuite,
        Scenario::ConditionSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Theorem1 => "theorem1",
            Scenario::CorollaryLambda0 => "corollary_lambda0",
            Scenario::TrigChain => "trig_chain",
            Scenario::LiberaSandwich => "libera_sandwich",
            Scenario::IdentitySuite => "identity_suite",
            Scenario::ConditionSweep => "condition_sweep",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown scenario `{s}`")))
    }
}

/// `(p, b, c)` triple for the residual checks of the identity suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterTriple {
    pub p: f64,
    pub b: f64,
    pub c: [f64; 2],
}

impl ParameterTriple {
    pub fn bessel(&self) -> Result<BesselParameters, CliError> {
        BesselParameters::new(self.p, self.b, complex(self.c)).map_err(|e| {
            CliError::Config(format!(
                "(p, b, c) = ({}, {}, {:?}): {e}",
                self.p, self.b, self.c
            ))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Parameters {
    pub lambda: f64,
    pub p: f64,
    pub b: f64,
    /// Complex `c` as `[re, im]`.
    pub c: [f64; 2],
    pub mu: f64,
    /// Truncation order `N` of every series.
    pub order: usize,
    /// Evaluation grid radii, strictly increasing in `(0, 1)`.
    pub radii: Vec<f64>,
    /// Angles per grid radius and samples per boundary curve.
    pub angles: usize,
    pub rho_ladder: Vec<f64>,
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    pub g1: FunctionSpec,
    pub g2: FunctionSpec,
    pub t_samples: Vec<f64>,
    pub best_dominant_scales: Vec<f64>,
    pub a_values: Vec<f64>,
    pub mu_family: Vec<f64>,
    pub seed: u64,
    pub cases: usize,
    pub residual_radii: Vec<f64>,
    pub residual_params: Vec<ParameterTriple>,
    pub sweep_lambdas: Vec<f64>,
    pub sweep_kappas: Vec<f64>,
    pub s_max: f64,
    pub s_count: usize,
    pub key_pairs: usize,
    pub expected_fail: Vec<String>,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            lambda: 0.0,
            p: -0.5,
            b: 1.0,
            c: [1.0, 0.0],
            mu: 1.0,
            order: DEFAULT_ORDER,
            radii: EvaluationGrid::DEFAULT_RADII.to_vec(),
            angles: EvaluationGrid::DEFAULT_ANGLES,
            rho_ladder: DEFAULT_LADDER.to_vec(),
            f: FunctionSpec::preset("quadratic(0.2)"),
            g: FunctionSpec::preset("quadratic(0.4)"),
            g1: FunctionSpec::preset("quadratic(0.1)"),
            g2: FunctionSpec::preset("quadratic(0.4)"),
            t_samples: vec![0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0],
            best_dominant_scales: vec![0.9, 0.99],
            a_values: vec![0.1, 0.3, 0.49],
            mu_family: vec![0.0, 1.0, 5.0],
            seed: 1,
            cases: 100,
            residual_radii: vec![0.25, 0.5, 0.75, 0.9, 0.99, 0.999],
            residual_params: vec![
                ParameterTriple {
                    p: 0.5,
                    b: 1.0,
                    c: [1.0, 0.0],
                },
                ParameterTriple {
                    p: 0.0,
                    b: 1.0,
                    c: [1.0, 0.0],
                },
                ParameterTriple {
                    p: 0.3,
                    b: 2.0,
                    c: [4.0, -3.0],
                },
            ],
            sweep_lambdas: vec![0.0, 0.5, 0.9],
            sweep_kappas: vec![-0.5, 0.5, 3.0],
            s_max: 50.0,
            s_count: 10_000,
            key_pairs: 10_000,
            expected_fail: Vec::new(),
        }
    }
}

pub fn complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn check_unit_interval_increasing(name: &str, values: &[f64]) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(config_err(format!("{name} must not be empty")));
    }
    if values.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(config_err(format!("{name} must lie in (0, 1)")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(config_err(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

impl Parameters {
    /// Parameters with index `kappa + shift`.
    pub fn bessel_shifted(&self, shift: f64) -> Result<BesselParameters, CliError> {
        ParameterTriple {
            p: self.p + shift,
            b: self.b,
            c: self.c,
        }
        .bessel()
    }

    pub fn c(&self) -> Complex64 {
        complex(self.c)
    }

    pub fn kappa(&self) -> f64 {
        self.p + (self.b + 1.0) / 2.0
    }

    pub fn grid(&self) -> Result<EvaluationGrid, CliError> {
        EvaluationGrid::new(self.radii.clone(), self.angles)
            .map_err(|e| config_err(format!("grid: {e}")))
    }

    pub fn series(&self, spec: &FunctionSpec) -> Result<PowerSeries, CliError> {
        spec.build(self.order)
    }

    /// Checks every field against its admissible range.
    pub fn validate(&self) -> Result<(), CliError> {
        let finite = [
            self.lambda,
            self.p,
            self.b,
            self.c[0],
            self.c[1],
            self.mu,
            self.s_max,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(config_err("parameters must be finite"));
        }
        if !(0.0..1.0).contains(&self.lambda) {
            return Err(config_err("lambda must lie in [0, 1)"));
        }
        if !(self.kappa() > -1.0) {
            return Err(config_err(format!(
                "kappa = p + (b+1)/2 = {} must exceed -1",
                self.kappa()
            )));
        }
        if self.c() == Complex64::new(0.0, 0.0) {
            return Err(config_err("c must be nonzero"));
        }
        if !(self.mu > -1.0) {
            return Err(config_err("mu must exceed -1"));
        }
        if self
            .mu_family
            .iter()
            .any(|m| !(*m > -1.0) || !m.is_finite())
        {
            return Err(config_err("mu_family entries must exceed -1"));
        }
        if self.order < 4 {
            return Err(config_err("order must be at least 4"));
        }
        check_unit_interval_increasing("radii", &self.radii)?;
        check_unit_interval_increasing("residual_radii", &self.residual_radii)?;
        check_unit_interval_increasing("rho_ladder", &self.rho_ladder)?;
        if self.angles < MIN_CURVE_SAMPLES {
            return Err(config_err(format!(
                "angles must be at least {MIN_CURVE_SAMPLES}"
            )));
        }
        self.grid()?;
        if self.t_samples.is_empty()
            || self
                .t_samples
                .iter()
                .any(|t| !(*t >= 0.0) || !t.is_finite())
        {
            return Err(config_err(
                "t_samples must be non-empty, finite and non-negative",
            ));
        }
        if self
            .best_dominant_scales
            .iter()
            .any(|s| !(*s > 0.0 && *s < 1.0))
        {
            return Err(config_err("best_dominant_scales must lie in (0, 1)"));
        }
        if self.a_values.iter().any(|a| !(a.abs() < 0.5)) {
            return Err(config_err("a_values must satisfy |a| < 1/2"));
        }
        if self.cases == 0 || self.key_pairs == 0 || self.s_count < 2 {
            return Err(config_err(
                "cases and key_pairs must be positive and s_count at least 2",
            ));
        }
        if !(self.s_max > 0.0) {
            return Err(config_err("s_max must be positive"));
        }
        if self.sweep_lambdas.iter().any(|l| !(0.0..1.0).contains(l)) {
            return Err(config_err("sweep_lambdas must lie in [0, 1)"));
        }
        if self
            .sweep_kappas
            .iter()
            .any(|k| !(*k > -1.0) || !k.is_finite())
        {
            return Err(config_err("sweep_kappas must exceed -1"));
        }
        for triple in &self.residual_params {
            triple.bessel()?;
        }
        for spec in [&self.f, &self.g, &self.g1, &self.g2] {
            spec.build(self.order)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn with_defaults(scenario: Scenario) -> Self {
        Self {
            scenario,
            parameters: Parameters::default(),
            output_path: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| config_err(format!("invalid configuration: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Command-line overrides applied on top of a configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub order: Option<usize>,
    pub rho_ladder: Option<Vec<f64>>,
    pub angles: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn apply(&self, params: &mut Parameters) {
        if let Some(order) = self.order {
            params.order = order;
        }
        if let Some(ladder) = &self.rho_ladder {
            params.rho_ladder = ladder.clone();
        }
        if let Some(angles) = self.angles {
            params.angles = angles;
        }
        if let Some(seed) = self.seed {
            params.seed = seed;
        }
    }
}
