use besselsub_core::bessel::BesselParameters;
use besselsub_core::geometry::{check_convexity_condition, convexity_functional, gamma_mu};
use besselsub_core::operators::{
    apply_b_over_z, libera_quadrature_oracle, libera_recurrence_residual, libera_transform,
    LiberaSpec,
};
use besselsub_core::PowerSeries;
use num_complex::Complex64;
use serde_json::json;

use super::{ladder_detail, subordination_ladder};
use crate::config::{Parameters, Scenario};
use crate::error::CliError;
use crate::report::{CheckList, Sample, VerificationReport};

pub const RECURRENCE_TOLERANCE: f64 = 1e-12;
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

/// `B_kappa(F_mu(h))/z`.
fn transformed(
    params: &BesselParameters,
    spec: &LiberaSpec,
    h: &PowerSeries,
) -> Result<PowerSeries, CliError> {
    Ok(apply_b_over_z(params, &libera_transform(spec, h)?)?)
}

/// Sandwich theorem for the generalized Libera operator: with
/// `omega_i = B_kappa(g_i)/z`, the premises
/// `omega_1 ≺ B_kappa(f)/z ≺ omega_2` and the convexity conditions on
/// `omega_i` imply the same ordering after applying `F_mu` to every function.
pub fn run_libera_sandwich(params: &Parameters) -> Result<VerificationReport, CliError> {
    let bessel = params.bessel_shifted(0.0)?;
    let spec = LiberaSpec::new(params.mu)?;
    let gamma = gamma_mu(params.mu)?;
    let grid = params.grid()?;
    let f = params.series(&params.f)?;
    let g1 = params.series(&params.g1)?;
    let g2 = params.series(&params.g2)?;

    let omega1 = apply_b_over_z(&bessel, &g1)?;
    let omega2 = apply_b_over_z(&bessel, &g2)?;
    let psi = apply_b_over_z(&bessel, &f)?;

    let mut checks = CheckList::new();
    let c1 = check_convexity_condition(&omega1, gamma, &grid)?;
    let c2 = check_convexity_condition(&omega2, gamma, &grid)?;
    let conditions_hold = c1.passed && c2.passed;
    checks.push(
        "omega1_convexity",
        c1.passed,
        json!({ "gamma_mu": gamma, "report": c1 }),
    );
    checks.push(
        "omega2_convexity",
        c2.passed,
        json!({ "gamma_mu": gamma, "report": c2 }),
    );

    let lower = subordination_ladder(&omega1, &psi, params)?;
    let upper = subordination_ladder(&psi, &omega2, params)?;
    let premises_hold = lower.holds() && upper.holds();
    checks.push("lower_premise", lower.holds(), ladder_detail(&lower));
    checks.push("upper_premise", upper.holds(), ladder_detail(&upper));

    let big_psi = transformed(&bessel, &spec, &f)?;
    let lower_c = subordination_ladder(&transformed(&bessel, &spec, &g1)?, &big_psi, params)?;
    let upper_c = subordination_ladder(&big_psi, &transformed(&bessel, &spec, &g2)?, params)?;
    let hypotheses = conditions_hold && premises_hold;
    checks.push_conclusion(
        "lower_conclusion",
        hypotheses,
        lower_c.holds(),
        ladder_detail(&lower_c),
    );
    checks.push_conclusion(
        "upper_conclusion",
        hypotheses,
        upper_c.holds(),
        ladder_detail(&upper_c),
    );

    let mut worst = 0.0f64;
    for h in [&f, &g1, &g2] {
        worst = worst.max(libera_recurrence_residual(&spec, &bessel, h)?);
    }
    checks.push(
        "libera_recurrence",
        worst < RECURRENCE_TOLERANCE,
        json!({ "max_coefficient_residual": worst, "tolerance": RECURRENCE_TOLERANCE }),
    );

    let transformed_f = libera_transform(&spec, &f)?;
    let mut worst_gap = 0.0f64;
    let mut worst_at = Complex64::new(0.0, 0.0);
    for r in [0.25, 0.5, 0.9] {
        for k in 0..8 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * (k as f64 + 0.5) / 8.0);
            let gap = (transformed_f.eval(z) - libera_quadrature_oracle(&spec, &f, z)?).norm();
            if gap > worst_gap {
                worst_gap = gap;
                worst_at = z;
            }
        }
    }
    checks.push(
        "libera_quadrature_agreement",
        worst_gap < QUADRATURE_TOLERANCE,
        json!({ "max_abs_diff": worst_gap, "at": [worst_at.re, worst_at.im], "tolerance": QUADRATURE_TOLERANCE }),
    );

    if params.mu_family.len() >= 2 {
        let rho = params.rho_ladder.last().copied().unwrap_or(0.9);
        let mut rows = Vec::new();
        let mut lower_margins = Vec::new();
        let mut upper_margins = Vec::new();
        for &mu in &params.mu_family {
            let s = LiberaSpec::new(mu)?;
            let big = transformed(&bessel, &s, &f)?;
            let one_rung = Parameters {
                rho_ladder: vec![rho],
                ..params.clone()
            };
            let lo = subordination_ladder(&transformed(&bessel, &s, &g1)?, &big, &one_rung)?;
            let hi = subordination_ladder(&big, &transformed(&bessel, &s, &g2)?, &one_rung)?;
            let (lo, hi) = (
                lo.last().map_or(f64::NAN, |v| v.margin),
                hi.last().map_or(f64::NAN, |v| v.margin),
            );
            rows.push(json!({ "mu": mu, "lower_margin": lo, "upper_margin": hi }));
            lower_margins.push(lo);
            upper_margins.push(hi);
        }
        let increasing = |m: &[f64]| m.windows(2).all(|w| w[0] < w[1]);
        checks.push(
            "margins_increase_with_mu",
            increasing(&lower_margins) && increasing(&upper_margins),
            json!({ "rho": rho, "family": rows }),
        );
    }

    let samples = grid
        .points()
        .map(|pt| convexity_functional(&omega1, pt.z).map(|value| Sample { z: pt.z, value }))
        .collect::<Result<Vec<_>, _>>()?;

    VerificationReport::assemble(
        Scenario::LiberaSandwich,
        params.clone(),
        checks,
        Vec::new(),
        "re(1 + z omega1''/omega1') for omega1 = B(g1)/z",
        samples,
    )
}
