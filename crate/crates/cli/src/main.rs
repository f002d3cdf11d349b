use std::path::{Path, PathBuf};
use std::process::ExitCode;

use besselsub::config::{Overrides, Scenario, ScenarioConfig};
use besselsub::presets::{eval_preset, EVAL_PRESETS};
use besselsub::report::{round_numbers, Status, VerificationReport};
use besselsub::{scenarios, CliError};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "besselsub",
    version,
    about = "Numerical verification of Bessel-operator subordination results"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario configuration.
    Verify {
        /// JSON scenario configuration.
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
        /// Write the JSON report here instead of `output_path` or stdout.
        #[arg(long, value_name = "PATH")]
        json_out: Option<PathBuf>,
        /// Write the sampled grid functional as CSV.
        #[arg(long, value_name = "PATH")]
        csv_out: Option<PathBuf>,
        /// Record the wall-clock runtime in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Run every scenario with default parameters.
    Suite {
        /// Run all scenarios.
        #[arg(long, required = true)]
        all: bool,
        /// Directory receiving one `<scenario>.json` report per scenario.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate a named function at one point.
    Eval {
        /// One of: cos_sqrt, sinc_sqrt, three_halves_trig, koebe, identity, quadratic(a).
        #[arg(long)]
        preset: String,
        /// Real and imaginary part of the point.
        #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        z: Vec<f64>,
        #[arg(long, default_value_t = besselsub_core::DEFAULT_ORDER)]
        order: usize,
    },
}

#[derive(Args)]
struct OverrideArgs {
    /// Truncation order N.
    #[arg(long)]
    order: Option<usize>,
    /// Comma-separated radius ladder.
    #[arg(long, value_delimiter = ',', value_name = "R1,R2,...")]
    rho_ladder: Option<Vec<f64>>,
    /// Angular samples per radius.
    #[arg(long)]
    angles: Option<usize>,
    /// Random seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl From<OverrideArgs> for Overrides {
    fn from(a: OverrideArgs) -> Self {
        Overrides {
            order: a.order,
            rho_ladder: a.rho_ladder,
            angles: a.angles,
            seed: a.seed,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            config,
            overrides,
            json_out,
            csv_out,
            timings,
        } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            Overrides::from(overrides).apply(&mut cfg.parameters);
            let report = scenarios::run(&cfg, timings)?;
            match json_out.or(cfg.output_path.clone()) {
                Some(path) => report.write_json(&path)?,
                None => print!("{}", report.to_json()),
            }
            if let Some(path) = csv_out {
                report.write_csv(&path)?;
            }
            summarize(&report);
            Ok(report.pass)
        }
        Command::Suite {
            all: _,
            out,
            overrides,
            timings,
        } => {
            let overrides = Overrides::from(overrides);
            let mut pass = true;
            for scenario in Scenario::ALL {
                let mut cfg = ScenarioConfig::with_defaults(scenario);
                overrides.apply(&mut cfg.parameters);
                let report = scenarios::run(&cfg, timings)?;
                report.write_json(&report_path(&out, scenario))?;
                summarize(&report);
                pass &= report.pass;
            }
            Ok(pass)
        }
        Command::Eval { preset, z, order } => {
            let z = Complex64::new(z[0], z[1]);
            let (value, closed) = eval_preset(&preset, z, order).map_err(|e| match e {
                CliError::Config(msg) => {
                    CliError::Config(format!("{msg} (known presets: {EVAL_PRESETS})"))
                }
                other => other,
            })?;
            let mut out = json!({
                "preset": preset,
                "order": order,
                "z": [z.re, z.im],
                "value": [value.re, value.im],
            });
            if let Some(c) = closed {
                out["closed_form"] = json!([c.re, c.im]);
                out["abs_diff"] = json!((value - c).norm());
            }
            round_numbers(&mut out);
            println!("{}", serde_json::to_string_pretty(&out).unwrap_or_default());
            Ok(true)
        }
    }
}

fn report_path(dir: &Path, scenario: Scenario) -> PathBuf {
    dir.join(format!("{}.json", scenario.name()))
}

fn summarize(report: &VerificationReport) {
    let count = |s: Status| report.checks.iter().filter(|c| c.status == s).count();
    eprintln!(
        "{}: {} ({} pass, {} fail, {} expected_fail, {} vacuous)",
        report.scenario,
        if report.pass { "PASS" } else { "FAIL" },
        count(Status::Pass),
        count(Status::Fail),
        count(Status::ExpectedFail),
        count(Status::Vacuous),
    );
    for check in report.failed_checks() {
        eprintln!("  failed: {}", check.name);
    }
}
