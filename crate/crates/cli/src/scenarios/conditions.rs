use besselsub_core::geometry::{
    admissibility_check, admissibility_xi, gamma_lambda_kappa, key_inequality_sides, GAMMA_MAX,
};
use num_complex::Complex64;
use serde_json::json;

use super::identities::gamma_grid_extremes;
use super::linspace;
use crate::config::{Parameters, Scenario};
use crate::error::CliError;
use crate::report::{CheckList, Sample, VerificationReport};

/// Sweeps the admissibility inequality and the scalar key inequality over
/// the configured `(lambda, kappa)` pairs, and bounds the `gamma` constant.
pub fn run_condition_sweep(params: &Parameters) -> Result<VerificationReport, CliError> {
    let s = linspace(-params.s_max, params.s_max, params.s_count);
    let mut checks = CheckList::new();

    let origin = admissibility_xi(
        0.0,
        0.0,
        Complex64::new(0.0, 0.0),
        Complex64::new(-0.5, 0.0),
    )?
    .re;
    let expected = -0.5 + GAMMA_MAX;
    checks.push(
        "admissibility_origin_value",
        (origin - expected).abs() < 1e-15,
        json!({ "value": origin, "expected": expected }),
    );

    for &lambda in &params.sweep_lambdas {
        for &kappa in &params.sweep_kappas {
            let report = admissibility_check(lambda, kappa, &s)?;
            checks.push(
                format!("admissibility(lambda={lambda},kappa={kappa})"),
                report.passed,
                json!({ "gamma": gamma_lambda_kappa(lambda, kappa)?, "samples": s.len(), "report": report }),
            );

            // the real part is increasing in t, so t = -(1 + s^2)/2 dominates
            let mut monotone = true;
            for &si in &s {
                let t = -(1.0 + si * si) / 2.0;
                let at = |t: f64| {
                    admissibility_xi(
                        lambda,
                        kappa,
                        Complex64::new(0.0, si),
                        Complex64::new(t, 0.0),
                    )
                };
                monotone &= at(2.0 * t)?.re <= at(t)?.re;
            }
            checks.push(
                format!("worst_case_t(lambda={lambda},kappa={kappa})"),
                monotone,
                json!({ "samples": s.len() }),
            );

            let (lhs, rhs) = key_inequality_sides(lambda, kappa)?;
            checks.push(
                format!("key_inequality(lambda={lambda},kappa={kappa})"),
                lhs < rhs,
                json!({ "lhs": lhs, "rhs": rhs }),
            );
        }
    }

    let (max, at_lambda, at_kappa, min) = gamma_grid_extremes()?;
    checks.push(
        "gamma_bound",
        min > 0.0 && max <= GAMMA_MAX + 1e-12,
        json!({ "grid": [200, 200], "max": max, "min": min, "argmax": [at_lambda, at_kappa], "bound": GAMMA_MAX }),
    );

    let (lambda, kappa) = (
        params.sweep_lambdas.first().copied().unwrap_or(0.0),
        params.sweep_kappas.first().copied().unwrap_or(0.0),
    );
    let samples = s
        .iter()
        .map(|&si| {
            let t = -(1.0 + si * si) / 2.0;
            admissibility_xi(
                lambda,
                kappa,
                Complex64::new(0.0, si),
                Complex64::new(t, 0.0),
            )
            .map(|xi| Sample {
                z: Complex64::new(0.0, si),
                value: xi.re,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    VerificationReport::assemble(
        Scenario::ConditionSweep,
        params.clone(),
        checks,
        Vec::new(),
        "re xi(is, -(1+s^2)/2) at z = is for the first (lambda, kappa) pair",
        samples,
    )
}
