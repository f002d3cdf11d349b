use besselsub_core::bessel::{
    closed_form_eval, ode_residual_u, ode_residual_w, u_series, BesselParameters, ClosedFormTag,
};
use besselsub_core::geometry::{gamma_lambda_kappa, gamma_mu, key_inequality_check, GAMMA_MAX};
use besselsub_core::grid::grid_maximum;
use besselsub_core::operators::{
    apply_b, libera_recurrence_residual, libera_transform, recurrence_residual, LiberaSpec,
};
use besselsub_core::{EvaluationGrid, PowerSeries};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::trig_chain::{CLOSED_FORM_RADII, CLOSED_FORM_TOLERANCE};
use crate::config::{Parameters, Scenario};
use crate::error::CliError;
use crate::report::{complex_json, CheckList, Sample, VerificationReport};

pub const RECURRENCE_TOLERANCE: f64 = 1e-12;
pub const COMMUTATION_TOLERANCE: f64 = 1e-13;
pub const U_RESIDUAL_TOLERANCE: f64 = 1e-10;
pub const W_RESIDUAL_TOLERANCE: f64 = 1e-5;
pub const GAMMA_AGREEMENT_TOLERANCE: f64 = 1e-14;

/// `(p, b, c)` cases of the `w` equation check.
pub const W_CASES: [(f64, f64, f64); 2] = [(0.5, 1.0, 1.0), (0.0, 1.0, 1.0)];

/// Random normalized series with remaining coefficients in the unit box.
pub fn random_normalized(rng: &mut impl Rng, order: usize) -> PowerSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    coeffs.extend(
        (2..order).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
    );
    PowerSeries::new(coeffs).unwrap_or_else(|_| PowerSeries::identity(order))
}

/// Nonzero `c` in the box `[-1, 1]^2`.
pub fn random_c(rng: &mut impl Rng) -> Complex64 {
    loop {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if c.norm() > 1e-6 {
            return c;
        }
    }
}

/// Parameters with index `kappa` drawn from `(-1, 5)`, with `b = 1`.
pub fn random_params(rng: &mut impl Rng) -> BesselParameters {
    loop {
        let kappa: f64 = rng.gen_range(-1.0..5.0);
        if kappa > -1.0 {
            if let Ok(p) = BesselParameters::new(kappa - 1.0, 1.0, random_c(rng)) {
                return p;
            }
        }
    }
}

/// `gamma` at `lambda = 0` from the direct (uncancelled) closed form.
pub fn gamma_lambda0_direct(kappa: f64) -> f64 {
    let k1 = kappa + 1.0;
    (1.0 + k1 * k1 - (1.0 + k1.powi(4)).sqrt()) / (4.0 * k1)
}

pub fn run_identity_suite(params: &Parameters) -> Result<VerificationReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut checks = CheckList::new();
    let n = params.order;

    let mut worst = (0.0f64, 0.0f64);
    let mut worst_libera = (0.0f64, 0.0f64);
    let mut worst_commute = 0.0f64;
    for _ in 0..params.cases {
        let f = random_normalized(&mut rng, n);
        let bp = random_params(&mut rng);
        let mu: f64 = rng.gen_range(-0.95..5.0);
        let spec = LiberaSpec::new(mu)?;

        let r = recurrence_residual(&bp, &f)?;
        if r > worst.0 {
            worst = (r, bp.kappa());
        }
        let r = libera_recurrence_residual(&spec, &bp, &f)?;
        if r > worst_libera.0 {
            worst_libera = (r, mu);
        }
        let one = apply_b(&bp, &libera_transform(&spec, &f)?)?;
        let other = libera_transform(&spec, &apply_b(&bp, &f)?)?;
        worst_commute = worst_commute.max(one.max_abs_diff(&other));
    }
    checks.push(
        "recurrence_identity",
        worst.0 < RECURRENCE_TOLERANCE,
        json!({ "cases": params.cases, "max_residual": worst.0, "worst_kappa": worst.1, "tolerance": RECURRENCE_TOLERANCE }),
    );
    checks.push(
        "libera_recurrence",
        worst_libera.0 < RECURRENCE_TOLERANCE,
        json!({ "cases": params.cases, "max_residual": worst_libera.0, "worst_mu": worst_libera.1, "tolerance": RECURRENCE_TOLERANCE }),
    );
    checks.push(
        "libera_commutes_with_b",
        worst_commute < COMMUTATION_TOLERANCE,
        json!({ "cases": params.cases, "max_abs_diff": worst_commute, "tolerance": COMMUTATION_TOLERANCE }),
    );

    let closed_grid = EvaluationGrid::new(CLOSED_FORM_RADII.to_vec(), params.angles)?;
    for tag in ClosedFormTag::ALL {
        let u = u_series(&tag.params(), n)?;
        let ext = grid_maximum(&closed_grid, |z| {
            Ok((u.eval(z) - closed_form_eval(tag, z)).norm())
        })?;
        checks.push(
            format!("closed_form_{}", tag.name()),
            ext.value < CLOSED_FORM_TOLERANCE,
            json!({ "max_abs_diff": ext.value, "at": complex_json(ext.z), "tolerance": CLOSED_FORM_TOLERANCE }),
        );
    }

    let residual_grid = EvaluationGrid::new(params.residual_radii.clone(), params.angles)?;
    let mut samples = Vec::new();
    for (i, triple) in params.residual_params.iter().enumerate() {
        let bp = triple.bessel()?;
        let u = u_series(&bp, n)?;
        let ext = ode_residual_u(&bp, &u, &residual_grid)?;
        checks.push(
            format!(
                "u_equation_residual(p={},b={},c={}{:+}i)",
                triple.p, triple.b, triple.c[0], triple.c[1]
            ),
            ext.value < U_RESIDUAL_TOLERANCE,
            json!({
                "order": n,
                "max_residual": ext.value,
                "argmax": complex_json(ext.z),
                "argmax_radius": ext.radius,
                "tolerance": U_RESIDUAL_TOLERANCE,
            }),
        );
        if i == 0 {
            samples = residual_grid
                .points()
                .map(|pt| Sample {
                    z: pt.z,
                    value: besselsub_core::bessel::u_ode_residual_at(&bp, &u, pt.z).norm(),
                })
                .collect();
        }
    }

    // the w grid must avoid the branch cut on the negative real axis
    let odd_angles = params.angles | 1;
    let w_grid = EvaluationGrid::new(params.residual_radii.clone(), odd_angles)?;
    for (p, b, c) in W_CASES {
        let bp = BesselParameters::real(p, b, c)?;
        let ext = ode_residual_w(&bp, &w_grid, n)?;
        checks.push(
            format!("w_equation_residual(p={p},b={b},c={c})"),
            ext.value < W_RESIDUAL_TOLERANCE,
            json!({
                "max_residual": ext.value,
                "argmax": complex_json(ext.z),
                "angles": odd_angles,
                "tolerance": W_RESIDUAL_TOLERANCE,
            }),
        );
    }

    let mut violations = Vec::new();
    for _ in 0..params.key_pairs {
        let lambda = rng.gen_range(0.0..1.0);
        let kappa = rng.gen_range(-1.0..50.0);
        if kappa > -1.0 && !key_inequality_check(lambda, kappa)? {
            violations.push(json!([lambda, kappa]));
        }
    }
    checks.push(
        "key_inequality",
        violations.is_empty(),
        json!({ "pairs": params.key_pairs, "violations": violations }),
    );

    let (max, at_lambda, at_kappa, min) = gamma_grid_extremes()?;
    checks.push(
        "gamma_bound",
        min > 0.0 && max <= GAMMA_MAX + 1e-12,
        json!({
            "grid": [200, 200],
            "max": max,
            "min": min,
            "argmax": [at_lambda, at_kappa],
            "bound": GAMMA_MAX,
        }),
    );

    let mut worst_gap = 0.0f64;
    for _ in 0..50 {
        let kappa = rng.gen_range(-0.999..20.0);
        let value = gamma_lambda_kappa(0.0, kappa)?;
        worst_gap = worst_gap
            .max((value - gamma_lambda0_direct(kappa)).abs())
            .max((value - gamma_mu(kappa)?).abs());
    }
    checks.push(
        "gamma_lambda0_agreement",
        worst_gap < GAMMA_AGREEMENT_TOLERANCE,
        json!({ "samples": 50, "max_abs_diff": worst_gap, "tolerance": GAMMA_AGREEMENT_TOLERANCE }),
    );

    VerificationReport::assemble(
        Scenario::IdentitySuite,
        params.clone(),
        checks,
        Vec::new(),
        "u equation residual for the first residual_params entry",
        samples,
    )
}

/// Maximum (with its location) and minimum of `gamma_{lambda,kappa}` on the
/// grid `lambda = i/200`, `kappa + 1 = 2 j / 200`.
pub fn gamma_grid_extremes() -> Result<(f64, f64, f64, f64), CliError> {
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    let mut min = f64::INFINITY;
    for i in 0..200 {
        let lambda = i as f64 / 200.0;
        for j in 1..=200 {
            let kappa = -1.0 + 2.0 * j as f64 / 200.0;
            let g = gamma_lambda_kappa(lambda, kappa)?;
            if g > best.0 {
                best = (g, lambda, kappa);
            }
            min = min.min(g);
        }
    }
    Ok((best.0, best.1, best.2, min))
}
