//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use besselsub::config::{Scenario, ScenarioConfig};
use besselsub::report::{Status, VerificationReport};
use besselsub::scenarios;
use besselsub_core::bessel::{
    closed_form_eval, ode_residual_u, ode_residual_w, u_series, BesselParameters, ClosedFormTag,
};
use besselsub_core::geometry::{
    admissibility_check, check_disk_subordination, check_subordination, gamma_lambda_kappa,
    key_inequality_check, Outcome, GAMMA_MAX,
};
use besselsub_core::grid::grid_maximum;
use besselsub_core::operators::{
    libera_quadrature_oracle, libera_recurrence_residual, libera_transform, recurrence_residual,
    LiberaSpec,
};
use besselsub_core::{EvaluationGrid, PowerSeries};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 64;

type Criterion = Result<(bool, String), String>;
type Check = (&'static str, fn() -> Criterion);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_normalized(rng: &mut ChaCha8Rng, order: usize) -> PowerSeries {
    let mut coeffs = vec![c(0.0, 0.0), c(1.0, 0.0)];
    coeffs.extend((2..order).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
    PowerSeries::new(coeffs).unwrap()
}

fn random_unit_box_c(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() > 1e-6 {
            return z;
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn recurrence_identity() -> Criterion {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let f = random_normalized(&mut rng, N);
        let kappa: f64 = rng.gen_range(-1.0..5.0);
        if kappa <= -1.0 {
            continue;
        }
        let params =
            BesselParameters::new(kappa - 1.0, 1.0, random_unit_box_c(&mut rng)).map_err(err)?;
        worst = worst.max(recurrence_residual(&params, &f).map_err(err)?);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst < 1e-12 && secs < 1.0,
        format!("max residual {worst:.3e} (< 1e-12), runtime {secs:.3} s (< 1 s)"),
    ))
}

fn closed_forms() -> Criterion {
    let grid = EvaluationGrid::new(vec![0.25, 0.5, 0.9, 0.999], 512).map_err(err)?;
    let mut worst = 0.0f64;
    for tag in ClosedFormTag::ALL {
        let u = u_series(&tag.params(), N).map_err(err)?;
        let ext = grid_maximum(&grid, |z| Ok((u.eval(z) - closed_form_eval(tag, z)).norm()))
            .map_err(err)?;
        worst = worst.max(ext.value);
    }
    Ok((
        worst < 1e-10,
        format!("max |u_series - closed form| {worst:.3e} (< 1e-10)"),
    ))
}

fn ode_residuals() -> Criterion {
    let radii = vec![0.25, 0.5, 0.75, 0.9, 0.99];
    let u_grid = EvaluationGrid::new(radii.clone(), 512).map_err(err)?;
    let mut u_worst = 0.0f64;
    let mut cases: Vec<BesselParameters> = ClosedFormTag::ALL.iter().map(|t| t.params()).collect();
    cases.push(BesselParameters::new(0.3, 2.0, c(4.0, -3.0)).map_err(err)?);
    for params in &cases {
        let u = u_series(params, N).map_err(err)?;
        u_worst = u_worst.max(ode_residual_u(params, &u, &u_grid).map_err(err)?.value);
    }
    let w_grid = EvaluationGrid::new(radii, 513).map_err(err)?;
    let mut w_worst = 0.0f64;
    for (p, b, cc) in [(0.5, 1.0, 1.0), (0.0, 1.0, 1.0)] {
        let params = BesselParameters::real(p, b, cc).map_err(err)?;
        w_worst = w_worst.max(ode_residual_w(&params, &w_grid, N).map_err(err)?.value);
    }
    Ok((
        u_worst < 1e-10 && w_worst < 1e-5,
        format!("u residual {u_worst:.3e} (< 1e-10), w residual {w_worst:.3e} (< 1e-5)"),
    ))
}

fn constants() -> Criterion {
    let expected = (2.0 - 2f64.sqrt()) / 4.0;
    let at_origin = (gamma_lambda_kappa(0.0, 0.0).map_err(err)? - expected).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut agreement = 0.0f64;
    for _ in 0..50 {
        let kappa: f64 = rng.gen_range(-0.999..20.0);
        let b = kappa + 1.0;
        let direct = (1.0 + b * b - (1.0 + b.powi(4)).sqrt()) / (4.0 * b);
        agreement = agreement.max((gamma_lambda_kappa(0.0, kappa).map_err(err)? - direct).abs());
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..200 {
        for j in 1..=200 {
            let g =
                gamma_lambda_kappa(i as f64 / 200.0, -1.0 + 2.0 * j as f64 / 200.0).map_err(err)?;
            lo = lo.min(g);
            hi = hi.max(g);
        }
    }
    Ok((
        at_origin < 1e-14 && agreement < 1e-14 && lo > 0.0 && hi <= GAMMA_MAX + 1e-12,
        format!(
            "|gamma(0,0) - (2-sqrt 2)/4| {at_origin:.3e}, lambda=0 agreement {agreement:.3e} (< 1e-14), \
             grid range [{lo:.6e}, {hi:.15e}]"
        ),
    ))
}

fn admissibility() -> Criterion {
    let s: Vec<f64> = (0..10_000)
        .map(|k| -50.0 + 100.0 * k as f64 / 9_999.0)
        .collect();
    let mut sup = f64::NEG_INFINITY;
    for lambda in [0.0, 0.5, 0.9] {
        for kappa in [-0.5, 0.5, 3.0] {
            sup = sup.max(admissibility_check(lambda, kappa, &s).map_err(err)?.value);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    for _ in 0..10_000 {
        let lambda = rng.gen_range(0.0..1.0);
        let kappa: f64 = rng.gen_range(-1.0..50.0);
        if kappa > -1.0 && !key_inequality_check(lambda, kappa).map_err(err)? {
            violations += 1;
        }
    }
    Ok((
        sup <= 0.0 && violations == 0,
        format!("sup re xi {sup:.6e} (<= 0), key inequality violations {violations} / 10000"),
    ))
}

fn run_default(scenario: Scenario) -> Result<VerificationReport, String> {
    scenarios::run(&ScenarioConfig::with_defaults(scenario), false).map_err(err)
}

fn trig_suprema() -> Criterion {
    let report = run_default(Scenario::TrigChain)?;
    let e = std::f64::consts::E;
    let reference = [1f64.cosh() - 1.0, 1f64.sinh() - 1.0, 3.0 / e - 1.0];
    let names = ["S0_cos_sqrt", "S1_sinc_sqrt", "S2_three_halves_trig"];
    let mut worst = 0.0f64;
    let mut values = Vec::new();
    for (name, r) in names.iter().zip(reference) {
        let check = report.check(name).ok_or(format!("missing check {name}"))?;
        let s = check.detail["extrapolated"]
            .as_f64()
            .ok_or("missing supremum")?;
        let last_rho = check.detail["rungs"]
            .as_array()
            .and_then(|r| r.last())
            .and_then(|r| r["rho"].as_f64());
        if last_rho != Some(0.9999) {
            return Err(format!("{name}: ladder does not end at 0.9999"));
        }
        worst = worst.max((s - r).abs());
        values.push(s);
    }
    let ordered = values[0] > values[1] && values[1] > values[2];
    let reported = [0.1, 0.3, 0.49].iter().all(|a| {
        report
            .check(&format!("implication_consistency(a={a})"))
            .is_some()
    });
    Ok((
        worst < 1e-6 && ordered && reported,
        format!(
            "S = [{:.9}, {:.9}, {:.9}], max error {worst:.3e} (< 1e-6), ordered {ordered}, bounds reported {reported}",
            values[0], values[1], values[2]
        ),
    ))
}

fn subordination_oracle() -> Criterion {
    let poly = |cs: &[f64]| PowerSeries::from_real(cs).map_err(err);
    let id = poly(&[0.0, 1.0])?;
    let table = [
        (poly(&[0.0, 0.5])?, Outcome::Holds),
        (poly(&[0.0, 2.0])?, Outcome::Fails),
        (poly(&[0.0, 0.0, 1.0])?, Outcome::Holds),
    ];
    let mut table_ok = true;
    for (f, expected) in &table {
        for rho in [0.9, 0.99, 0.999, 0.9999] {
            let v = check_subordination(f, &id, rho, (1.0 + rho) / 2.0, 512).map_err(err)?;
            table_ok &= v.outcome == *expected;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut agree = true;
    for _ in 0..20 {
        let alpha = Complex64::from_polar(
            rng.gen_range(0.0..0.8),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let radius = rng.gen_range(alpha.norm() + 0.05..1.0);
        let g = PowerSeries::new(vec![c(1.0, 0.0), alpha]).map_err(err)?;
        let disk = check_disk_subordination(&g, radius).map_err(err)?;
        let f = PowerSeries::new(vec![c(0.0, 0.0), alpha]).map_err(err)?;
        let target = PowerSeries::new(vec![c(0.0, 0.0), c(radius, 0.0)]).map_err(err)?;
        let general = check_subordination(&f, &target, 0.9999, 1.0 - 1e-8, 512).map_err(err)?;
        agree &= disk.outcome == general.outcome;
        worst = worst.max((disk.margin - general.margin).abs());
    }
    Ok((
        table_ok && agree && worst < 1e-6,
        format!("verdict table reproduced {table_ok}, disk vs general outcomes agree {agree}, max margin gap {worst:.3e} (< 1e-6)"),
    ))
}

fn libera() -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut quad, mut rec) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let mu: f64 = rng.gen_range(-0.95..5.0);
        let spec = LiberaSpec::new(mu).map_err(err)?;
        let f = random_normalized(&mut rng, N);
        let z = Complex64::from_polar(
            rng.gen_range(0.0..0.95),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let series = libera_transform(&spec, &f).map_err(err)?.eval(z);
        quad = quad.max((series - libera_quadrature_oracle(&spec, &f, z).map_err(err)?).norm());
        let params =
            BesselParameters::new(rng.gen_range(-1.0..4.0), 1.0, random_unit_box_c(&mut rng))
                .map_err(err)?;
        rec = rec.max(libera_recurrence_residual(&spec, &params, &f).map_err(err)?);
    }
    Ok((
        quad < 1e-8 && rec < 1e-12,
        format!("max transform vs quadrature {quad:.3e} (< 1e-8), recurrence residual {rec:.3e} (< 1e-12)"),
    ))
}

fn end_to_end() -> Criterion {
    let start = Instant::now();
    let mut reports = Vec::new();
    for scenario in Scenario::ALL {
        reports.push(run_default(scenario)?);
    }
    let secs = start.elapsed().as_secs_f64();
    let mut ok = secs < 30.0;
    let mut parts = Vec::new();
    for report in reports
        .iter()
        .filter(|r| matches!(r.scenario, Scenario::Theorem1 | Scenario::LiberaSandwich))
    {
        let unstable: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.detail.get("stable").is_some() && c.detail["stable"] != true)
            .map(|c| c.name.as_str())
            .collect();
        let ladders = report
            .checks
            .iter()
            .filter(|c| c.detail.get("stable").is_some())
            .count();
        let all_pass = report.pass && report.checks.iter().all(|c| c.status == Status::Pass);
        ok &= all_pass && unstable.is_empty() && ladders > 0;
        parts.push(format!(
            "{} pass {} ({} ladders, unstable {:?})",
            report.scenario, all_pass, ladders, unstable
        ));
    }
    parts.push(format!("suite runtime {secs:.2} s (< 30 s)"));
    Ok((ok, parts.join(", ")))
}

fn suite_to(dir: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_besselsub"))
        .args(["suite", "--all", "--seed", "1", "--out"])
        .arg(dir)
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(err)?;
    if status.code() != Some(0) {
        return Err(format!("suite exited with {status}"));
    }
    Ok(())
}

fn determinism() -> Criterion {
    let first = tempfile::tempdir().map_err(err)?;
    let second = tempfile::tempdir().map_err(err)?;
    suite_to(first.path())?;
    suite_to(second.path())?;
    let mut identical = 0;
    let mut differing = Vec::new();
    for scenario in Scenario::ALL {
        let name = format!("{}.json", scenario.name());
        let a = std::fs::read(first.path().join(&name)).map_err(err)?;
        let b = std::fs::read(second.path().join(&name)).map_err(err)?;
        if a == b && !a.is_empty() {
            identical += 1;
        } else {
            differing.push(name);
        }
    }
    Ok((
        differing.is_empty(),
        format!(
            "{identical} / {} reports byte-identical, differing {differing:?}",
            Scenario::ALL.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("recurrence identity", recurrence_identity),
        ("closed-form oracles", closed_forms),
        ("ODE residuals", ode_residuals),
        ("constants", constants),
        ("admissibility and key inequality", admissibility),
        ("trig-chain suprema", trig_suprema),
        ("subordination oracle soundness", subordination_oracle),
        ("Libera operator", libera),
        ("end-to-end demos", end_to_end),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (passed, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail}",
            i + 1,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} / {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
