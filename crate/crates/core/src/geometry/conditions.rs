use alloc::string::{String, ToString};

use num_complex::Complex64;

use super::constants::gamma_lambda_kappa;
use crate::grid::{grid_minimum, EvaluationGrid};
use crate::series::PowerSeries;
use crate::{Error, Result};

/// Below this modulus `Phi'` is treated as vanishing.
const DERIVATIVE_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Comparison {
    /// Passes when the infimum is strictly above the threshold.
    InfimumAbove,
    /// Passes when the supremum does not exceed the threshold.
    SupremumAtMost,
}

/// Extremal value of a functional over a sample set, compared to a threshold.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConditionReport {
    pub functional_name: String,
    pub comparison: Comparison,
    /// Infimum or supremum, according to `comparison`.
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Where the extremum was attained. For the admissibility sweep this is
    /// the pair `(s, t)` packed as `s + i t`.
    pub argext: Complex64,
}

impl ConditionReport {
    pub fn infimum_above(name: &str, value: f64, threshold: f64, argext: Complex64) -> Self {
        Self {
            functional_name: name.to_string(),
            comparison: Comparison::InfimumAbove,
            value,
            threshold,
            passed: value > threshold,
            argext,
        }
    }

    pub fn supremum_at_most(name: &str, value: f64, threshold: f64, argext: Complex64) -> Self {
        Self {
            functional_name: name.to_string(),
            comparison: Comparison::SupremumAtMost,
            value,
            threshold,
            passed: value <= threshold,
            argext,
        }
    }
}

/// `1 + z Phi''(z) / Phi'(z)` from precomputed derivative series.
fn one_plus_z_ratio(d1: &PowerSeries, d2: &PowerSeries, z: Complex64) -> Result<Complex64> {
    let p1 = d1.eval(z);
    if p1.norm() <= DERIVATIVE_FLOOR {
        return Err(Error::VanishingDerivative {
            at_re: z.re,
            at_im: z.im,
        });
    }
    Ok(Complex64::new(1.0, 0.0) + z * d2.eval(z) / p1)
}

fn derivative_pair(phi: &PowerSeries) -> Result<(PowerSeries, PowerSeries)> {
    // A linear phi has phi'' = 0; pad so the second derivative exists.
    let phi = if phi.order() < 3 {
        phi.truncated(3)
    } else {
        phi.clone()
    };
    let d1 = phi.differentiate()?;
    let d2 = d1.differentiate()?;
    Ok((d1, d2))
}

/// `Re(1 + z Phi''(z)/Phi'(z))` at a single point.
pub fn convexity_functional(phi: &PowerSeries, z: Complex64) -> Result<f64> {
    let (d1, d2) = derivative_pair(phi)?;
    Ok(one_plus_z_ratio(&d1, &d2, z)?.re)
}

/// Infimum over the grid of `Re(1 + z Phi''/Phi')`; passes when it exceeds
/// `-gamma`.
pub fn check_convexity_condition(
    phi: &PowerSeries,
    gamma: f64,
    grid: &EvaluationGrid,
) -> Result<ConditionReport> {
    if (phi.coeff(0) - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::NotNormalized);
    }
    let (d1, d2) = derivative_pair(phi)?;
    let ext = grid_minimum(grid, |z| Ok(one_plus_z_ratio(&d1, &d2, z)?.re))?;
    Ok(ConditionReport::infimum_above(
        "re(1 + z phi''/phi')",
        ext.value,
        0.0 - gamma,
        ext.z,
    ))
}

fn chain_constant(lambda: f64, kappa: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        });
    }
    if !(kappa > -1.0) {
        return Err(Error::OutOfRange {
            name: "kappa",
            value: kappa,
        });
    }
    Ok((kappa + 1.0) / (1.0 - lambda))
}

/// Positivity test for the chain
/// `L(z, t) = phi(z) + (1 + t) (1 - lambda)/(kappa + 1) z phi'(z)`:
/// the infimum over grid and `t_samples` of
/// `Re[(kappa+1)/(1-lambda) + (1 + t)(1 + z phi''/phi')]` must be positive.
pub fn loewner_chain_check(
    phi: &PowerSeries,
    lambda: f64,
    kappa: f64,
    t_samples: &[f64],
    grid: &EvaluationGrid,
) -> Result<ConditionReport> {
    let k = chain_constant(lambda, kappa)?;
    if phi.coeff(1).norm() <= DERIVATIVE_FLOOR {
        return Err(Error::VanishingDerivative {
            at_re: 0.0,
            at_im: 0.0,
        });
    }
    if t_samples.is_empty() || t_samples.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(Error::InvalidGrid(
            "t samples must be finite and non-negative",
        ));
    }
    let (d1, d2) = derivative_pair(phi)?;
    let mut best: Option<(f64, Complex64)> = None;
    for &t in t_samples {
        let ext = grid_minimum(grid, |z| {
            Ok(k + (1.0 + t) * one_plus_z_ratio(&d1, &d2, z)?.re)
        })?;
        if best.is_none_or(|(v, _)| ext.value < v) {
            best = Some((ext.value, ext.z));
        }
    }
    let (value, z) = best.unwrap_or((f64::NAN, Complex64::new(0.0, 0.0)));
    Ok(ConditionReport::infimum_above(
        "re(z dL/dz / dL/dt)",
        value,
        0.0,
        z,
    ))
}

/// `xi(u, v) = u + v / (u + (kappa+1)/(1-lambda)) + gamma_{lambda,kappa}`.
pub fn admissibility_xi(lambda: f64, kappa: f64, u: Complex64, v: Complex64) -> Result<Complex64> {
    let k = chain_constant(lambda, kappa)?;
    let gamma = gamma_lambda_kappa(lambda, kappa)?;
    Ok(u + v / (u + k) + gamma)
}

/// Supremum over `s` of `Re xi(i s, t)` at `t = -(1 + s^2)/2`.
///
/// `Re xi(i s, t) = t K / (s^2 + K^2) + gamma` with `K > 0`, which increases
/// with `t`; the largest admissible `t` is therefore the worst case and no
/// other `t` needs to be sampled.
pub fn admissibility_check(lambda: f64, kappa: f64, s_samples: &[f64]) -> Result<ConditionReport> {
    let mut best: Option<(f64, Complex64)> = None;
    for &s in s_samples {
        let t = -(1.0 + s * s) / 2.0;
        let value = admissibility_xi(
            lambda,
            kappa,
            Complex64::new(0.0, s),
            Complex64::new(t, 0.0),
        )?
        .re;
        if best.is_none_or(|(v, _)| value > v) {
            best = Some((value, Complex64::new(s, t)));
        }
    }
    let (value, at) = best.ok_or(Error::InvalidGrid("no s samples"))?;
    Ok(ConditionReport::supremum_at_most(
        "re xi(is, t)",
        value,
        0.0,
        at,
    ))
}

/// Both sides of `(1-lambda)^4 - sqrt((1-lambda)^4 + (kappa+1)^4) < 3 (kappa+1)^2`.
pub fn key_inequality_sides(lambda: f64, kappa: f64) -> Result<(f64, f64)> {
    chain_constant(lambda, kappa)?;
    let (a, b) = (1.0 - lambda, kappa + 1.0);
    let (a4, b2) = (a * a * a * a, b * b);
    Ok((a4 - libm::sqrt(a4 + b2 * b2), 3.0 * b2))
}

pub fn key_inequality_check(lambda: f64, kappa: f64) -> Result<bool> {
    let (lhs, rhs) = key_inequality_sides(lambda, kappa)?;
    Ok(lhs < rhs)
}
