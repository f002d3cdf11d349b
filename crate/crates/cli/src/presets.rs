//! Named test functions and explicit coefficient lists.

use std::fmt;

use besselsub_core::bessel::{closed_form_eval, u_series, ClosedFormTag};
use besselsub_core::PowerSeries;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A function of class `A` given either by name (`"koebe"` for `z/(1-z)`,
/// `"identity"` for `z`, `"quadratic(a)"` or `"quadratic(re, im)"` for
/// `z + a z^2`) or by its Taylor coefficients as `[re, im]` pairs starting
/// at `z^0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Preset(String),
    Coefficients(Vec<[f64; 2]>),
}

impl FunctionSpec {
    pub fn preset(name: &str) -> Self {
        FunctionSpec::Preset(name.to_owned())
    }

    /// Series of the given order. The result is always normalized.
    pub fn build(&self, order: usize) -> Result<PowerSeries, CliError> {
        let series = match self {
            FunctionSpec::Preset(name) => build_preset(name, order)?,
            FunctionSpec::Coefficients(pairs) => {
                let coeffs = pairs
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect();
                PowerSeries::new(coeffs)
                    .map_err(|e| CliError::Config(format!("coefficient list: {e}")))?
                    .truncated(order)
            }
        };
        if !series.is_normalized() {
            return Err(CliError::Config(format!(
                "function {self} must satisfy f(0) = 0 and f'(0) = 1"
            )));
        }
        Ok(series)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Preset(name) => f.write_str(name),
            FunctionSpec::Coefficients(pairs) => write!(f, "{pairs:?}"),
        }
    }
}

fn build_preset(name: &str, order: usize) -> Result<PowerSeries, CliError> {
    let bad = || CliError::Config(format!("unknown function preset `{name}`"));
    match name.trim() {
        "koebe" => Ok(PowerSeries::koebe(order)),
        "identity" => Ok(PowerSeries::identity(order)),
        other => {
            let args = other
                .strip_prefix("quadratic(")
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(bad)?;
            let parts: Vec<f64> = args
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            let a = match parts.as_slice() {
                [re] => Complex64::new(*re, 0.0),
                [re, im] => Complex64::new(*re, *im),
                _ => return Err(bad()),
            };
            PowerSeries::quadratic(a, order).map_err(|e| CliError::Config(format!("{name}: {e}")))
        }
    }
}

/// Names accepted by `eval --preset`.
pub const EVAL_PRESETS: &str =
    "cos_sqrt, sinc_sqrt, three_halves_trig, koebe, identity, quadratic(a)";

/// Value of a named preset at `z`. Closed-form Bessel presets return the
/// truncated series value together with the elementary closed form.
pub fn eval_preset(
    name: &str,
    z: Complex64,
    order: usize,
) -> Result<(Complex64, Option<Complex64>), CliError> {
    if let Some(tag) = ClosedFormTag::ALL.into_iter().find(|t| t.name() == name) {
        let u = u_series(&tag.params(), order).map_err(CliError::Numeric)?;
        let value = u.evaluate(z).map_err(CliError::Numeric)?;
        return Ok((value, Some(closed_form_eval(tag, z))));
    }
    let f = FunctionSpec::preset(name).build(order)?;
    Ok((f.evaluate(z).map_err(CliError::Numeric)?, None))
}
