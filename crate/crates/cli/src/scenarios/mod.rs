//! Scenario runners. Each one validates its parameters, runs a fixed list
//! of checks sequentially and assembles a [`VerificationReport`].

mod blend;
mod conditions;
mod identities;
mod libera;
mod trig_chain;

use std::time::Instant;

use besselsub_core::geometry::{check_subordination, run_ladder, LadderReport};
use besselsub_core::PowerSeries;
use serde_json::Value;

pub use blend::{run_corollary_lambda0, run_theorem1_demo};
pub use conditions::run_condition_sweep;
pub use identities::run_identity_suite;
pub use libera::run_libera_sandwich;
pub use trig_chain::run_trig_chain;

use crate::config::{Parameters, Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::report::{ladder_json, VerificationReport};

/// Runs the scenario named in `cfg`. With `timings`, the wall-clock runtime
/// is stored in the report.
pub fn run(cfg: &ScenarioConfig, timings: bool) -> Result<VerificationReport, CliError> {
    cfg.parameters.validate()?;
    let start = Instant::now();
    let params = &cfg.parameters;
    let mut report = match cfg.scenario {
        Scenario::Theorem1 => run_theorem1_demo(params),
        Scenario::CorollaryLambda0 => run_corollary_lambda0(params),
        Scenario::TrigChain => run_trig_chain(params),
        Scenario::LiberaSandwich => run_libera_sandwich(params),
        Scenario::IdentitySuite => run_identity_suite(params),
        Scenario::ConditionSweep => run_condition_sweep(params),
    }?;
    if timings {
        report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Radius of the dominating function's boundary curve at ladder rung `rho`.
pub fn target_rho(rho: f64) -> f64 {
    (1.0 + rho) / 2.0
}

/// `f ≺ big_f` along the configured ladder, comparing `f` on `|z| = rho`
/// with `big_f` on `|z| = (1 + rho)/2`.
pub fn subordination_ladder(
    f: &PowerSeries,
    big_f: &PowerSeries,
    params: &Parameters,
) -> Result<LadderReport, CliError> {
    Ok(run_ladder(&params.rho_ladder, |rho| {
        check_subordination(f, big_f, rho, target_rho(rho), params.angles)
    })?)
}

pub fn ladder_detail(ladder: &LadderReport) -> Value {
    ladder_json(ladder, target_rho)
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}
