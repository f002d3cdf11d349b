use besselsub_core::geometry::{
    check_convexity_condition, check_subordination, convexity_functional, gamma_lambda_kappa,
    loewner_chain_check, Outcome,
};
use besselsub_core::operators::{apply_b_over_z, blend_phi, BlendSpec};
use besselsub_core::PowerSeries;
use num_complex::Complex64;
use serde_json::json;

use super::{ladder_detail, subordination_ladder, target_rho};
use crate::config::{Parameters, Scenario};
use crate::error::CliError;
use crate::report::{verdict_json, CheckList, Sample, VerificationReport};

/// Blended-operator subordination theorem: convexity condition on `Phi`,
/// the premise `Phi_f ≺ Phi_g`, the conclusion
/// `B_{kappa+2}(f)/z ≺ B_{kappa+2}(g)/z`, the chain condition behind the
/// proof and a spot probe of the best-dominant claim.
pub fn run_theorem1_demo(params: &Parameters) -> Result<VerificationReport, CliError> {
    run_blend(Scenario::Theorem1, params)
}

/// The `lambda = 0` case, where the convexity condition is stated on
/// `B_{kappa+1}(g)/z` alone.
pub fn run_corollary_lambda0(params: &Parameters) -> Result<VerificationReport, CliError> {
    if params.lambda != 0.0 {
        return Err(CliError::Config(
            "corollary_lambda0 requires lambda = 0".to_owned(),
        ));
    }
    run_blend(Scenario::CorollaryLambda0, params)
}

fn run_blend(scenario: Scenario, params: &Parameters) -> Result<VerificationReport, CliError> {
    let spec = BlendSpec::from_components(params.lambda, params.p, params.b, params.c())?;
    let (lambda, kappa) = (spec.lambda(), spec.kappa());
    let grid = params.grid()?;
    let f = params.series(&params.f)?;
    let g = params.series(&params.g)?;
    let gamma = gamma_lambda_kappa(lambda, kappa)?;

    let phi_f = blend_phi(&spec, &f)?;
    let phi_g = blend_phi(&spec, &g)?;
    let second = spec.second()?;
    let psi = apply_b_over_z(&second, &f)?;
    let dominant = apply_b_over_z(&second, &g)?;

    let mut checks = CheckList::new();
    let mut notes = Vec::new();

    let condition = check_convexity_condition(&phi_g, gamma, &grid)?;
    let condition_holds = condition.passed;
    checks.push(
        "convexity_condition",
        condition_holds,
        json!({ "gamma": gamma, "report": condition }),
    );
    if scenario == Scenario::CorollaryLambda0 {
        let positive = check_convexity_condition(&phi_g, -gamma, &grid)?;
        checks.push(
            "convexity_condition_positive_threshold",
            positive.passed,
            json!({ "gamma": gamma, "report": positive }),
        );
        notes.push(
            "convexity_condition uses the threshold -gamma obtained by setting lambda = 0 in the \
             blended condition; convexity_condition_positive_threshold uses the stricter +gamma"
                .to_owned(),
        );
    }

    let dominant_convexity = check_convexity_condition(&dominant, 0.0, &grid)?;
    checks.push_conclusion(
        "dominant_convexity",
        condition_holds,
        dominant_convexity.passed,
        json!({ "report": dominant_convexity }),
    );
    let chain = loewner_chain_check(&dominant, lambda, kappa, &params.t_samples, &grid)?;
    checks.push_conclusion(
        "loewner_chain",
        condition_holds,
        chain.passed,
        json!({ "chain_constant": spec.chain_constant(), "report": chain }),
    );

    let premise = subordination_ladder(&phi_f, &phi_g, params)?;
    let premise_holds = premise.holds();
    checks.push(
        "premise_subordination",
        premise_holds,
        ladder_detail(&premise),
    );

    let conclusion = subordination_ladder(&psi, &dominant, params)?;
    checks.push_conclusion(
        "conclusion_subordination",
        condition_holds && premise_holds,
        conclusion.holds(),
        ladder_detail(&conclusion),
    );

    if !params.best_dominant_scales.is_empty() {
        let (passed, detail) = best_dominant_probe(&dominant, params)?;
        checks.push("best_dominant_probe", passed, detail);
    }

    let samples = grid
        .points()
        .map(|pt| convexity_functional(&phi_g, pt.z).map(|value| Sample { z: pt.z, value }))
        .collect::<Result<Vec<_>, _>>()?;

    VerificationReport::assemble(
        scenario,
        params.clone(),
        checks,
        notes,
        "re(1 + z phi''/phi') for phi = blended B(g)/z",
        samples,
    )
}

/// The dominant `q = B_{kappa+2}(g)/z` is attained by `f = g`, so no strictly
/// smaller `1 + s (q - 1)`, `s < 1`, can dominate it. Passes when `q` fails
/// to be subordinate to each shrunken copy at the outermost rung.
fn best_dominant_probe(
    dominant: &PowerSeries,
    params: &Parameters,
) -> Result<(bool, serde_json::Value), CliError> {
    let rho = params.rho_ladder.last().copied().unwrap_or(0.9);
    let one = PowerSeries::constant(Complex64::new(1.0, 0.0), dominant.order());
    let mut entries = Vec::new();
    let mut passed = true;
    for &scale in &params.best_dominant_scales {
        let shrunk = &one + &(dominant - &one).scale(Complex64::new(scale, 0.0));
        let verdict = check_subordination(dominant, &shrunk, rho, target_rho(rho), params.angles)?;
        passed &= verdict.outcome == Outcome::Fails;
        let mut entry = verdict_json(&verdict);
        entry["scale"] = json!(scale);
        entries.push(entry);
    }
    Ok((
        passed,
        json!({ "rho": rho, "target_rho": target_rho(rho), "alternatives": entries }),
    ))
}
