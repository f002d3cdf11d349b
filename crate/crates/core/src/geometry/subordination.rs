use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use super::curve::{encloses, BoundaryCurve, ON_CURVE_TOLERANCE};
use crate::grid::{golden_section, grid_maximum, EvaluationGrid};
use crate::series::PowerSeries;
use crate::{Error, Result};

/// Radii approaching the unit circle used to approximate open-disk
/// statements.
pub const DEFAULT_LADDER: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];

/// `f(0)` and `F(0)` must agree to this absolute tolerance.
const CENTER_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Outcome {
    Holds,
    Fails,
    /// Some sample sat within the on-curve tolerance of the target boundary.
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubordinationVerdict {
    pub outcome: Outcome,
    /// Signed distance of the tested image to the target boundary; negative
    /// when some tested point escapes.
    pub margin: f64,
    /// Domain point where the margin is attained.
    pub witness: Complex64,
    /// Its image under the tested function.
    pub witness_image: Complex64,
}

impl SubordinationVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    fn from_margin(margin: f64, witness: Complex64, witness_image: Complex64) -> Self {
        let outcome = if margin > ON_CURVE_TOLERANCE {
            Outcome::Holds
        } else if margin < -ON_CURVE_TOLERANCE {
            Outcome::Fails
        } else {
            Outcome::Indeterminate
        };
        Self {
            outcome,
            margin,
            witness,
            witness_image,
        }
    }
}

/// Signed distance from `w` to the image curve of `|z| = rho` under `big_f`:
/// positive inside, negative outside. The nearest polyline segment seeds a
/// golden-section search for the distance to the analytic curve.
///
/// The curve must already be known to be simple.
fn signed_distance(big_f: &PowerSeries, curve: &BoundaryCurve, w: Complex64) -> Result<f64> {
    let (distance, k) = curve.distance(w);
    if distance < ON_CURVE_TOLERANCE {
        return Err(Error::PointOnCurve { distance });
    }
    let inside = encloses(curve, w);
    let m = curve.len();
    let step = TAU / m as f64;
    let theta = step * k as f64;
    let rho = curve.rho();
    let (_, d) = golden_section(theta - step, theta + 2.0 * step, 40, &mut |t| {
        Ok((big_f.eval(Complex64::from_polar(rho, t)) - w).norm())
    })?;
    Ok(if inside { d } else { -d })
}

/// Tests `f ≺ F` by sampling `f` on `|z| = rho_f` against the image curve of
/// `|z| = rho_big_f` under `F`, with `rho_f < rho_big_f < 1`.
///
/// Univalence of `F` is the caller's claim; this only verifies that the
/// sampled target curve is simple and fails with
/// [`Error::SelfIntersecting`] otherwise.
pub fn check_subordination(
    f: &PowerSeries,
    big_f: &PowerSeries,
    rho_f: f64,
    rho_big_f: f64,
    samples: usize,
) -> Result<SubordinationVerdict> {
    if !(rho_f > 0.0 && rho_f < rho_big_f && rho_big_f < 1.0) {
        return Err(Error::OutOfRange {
            name: "rho_f",
            value: rho_f,
        });
    }
    let curve = BoundaryCurve::sample(big_f, rho_big_f, samples)?;
    if let Some((first, second)) = curve.find_self_intersection() {
        return Err(Error::SelfIntersecting { first, second });
    }

    let zero = Complex64::new(0.0, 0.0);
    let center_gap = (f.eval(zero) - big_f.eval(zero)).norm();
    if center_gap >= CENTER_TOLERANCE {
        return Ok(SubordinationVerdict {
            outcome: Outcome::Fails,
            margin: -center_gap,
            witness: zero,
            witness_image: f.eval(zero),
        });
    }

    let mut on_curve = false;
    let mut best: Option<(f64, usize)> = None;
    for k in 0..samples {
        let w = f.eval(BoundaryCurve::node(rho_f, k, samples));
        match signed_distance(big_f, &curve, w) {
            Ok(d) => {
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, k));
                }
            }
            Err(Error::PointOnCurve { .. }) => on_curve = true,
            Err(e) => return Err(e),
        }
    }

    let Some((margin, k)) = best else {
        return Ok(SubordinationVerdict {
            outcome: Outcome::Indeterminate,
            margin: 0.0,
            witness: BoundaryCurve::node(rho_f, 0, samples),
            witness_image: f.eval(BoundaryCurve::node(rho_f, 0, samples)),
        });
    };

    // refine the witness along |z| = rho_f
    let step = TAU / samples as f64;
    let theta0 = step * k as f64;
    let (theta, refined) = golden_section(theta0 - step, theta0 + step, 40, &mut |t| {
        let w = f.eval(Complex64::from_polar(rho_f, t));
        match signed_distance(big_f, &curve, w) {
            Ok(d) => Ok(d),
            Err(Error::PointOnCurve { .. }) => Ok(0.0),
            Err(e) => Err(e),
        }
    })?;
    let (margin, witness) = if refined < margin {
        (refined, Complex64::from_polar(rho_f, theta))
    } else {
        (margin, BoundaryCurve::node(rho_f, k, samples))
    };

    let mut verdict = SubordinationVerdict::from_margin(margin, witness, f.eval(witness));
    if on_curve {
        verdict.outcome = Outcome::Indeterminate;
    }
    Ok(verdict)
}

/// Grid used by [`check_disk_subordination`]: radii up to 0.9999, 512 angles.
pub fn disk_grid() -> EvaluationGrid {
    EvaluationGrid::new(alloc::vec![0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.9999], 512)
        .unwrap_or_default()
}

/// Tests `g ≺ 1 + radius z`, i.e. `|g(z) - 1| < radius` on the disk, for
/// `g(0) = 1`.
pub fn check_disk_subordination(g: &PowerSeries, radius: f64) -> Result<SubordinationVerdict> {
    check_disk_subordination_on(g, radius, &disk_grid())
}

pub fn check_disk_subordination_on(
    g: &PowerSeries,
    radius: f64,
    grid: &EvaluationGrid,
) -> Result<SubordinationVerdict> {
    let one = Complex64::new(1.0, 0.0);
    if (g.coeff(0) - one).norm() > CENTER_TOLERANCE {
        return Err(Error::NotNormalized);
    }
    if !(radius > 0.0) {
        return Err(Error::OutOfRange {
            name: "radius",
            value: radius,
        });
    }
    let sup = grid_maximum(grid, |z| Ok((g.eval(z) - one).norm()))?;
    Ok(SubordinationVerdict::from_margin(
        radius - sup.value,
        sup.z,
        g.eval(sup.z),
    ))
}

/// Verdicts along a ladder of radii.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LadderReport {
    pub rungs: Vec<(f64, SubordinationVerdict)>,
    /// The last two rungs agree in outcome and their margins differ by less
    /// than 10%.
    pub stable: bool,
}

impl LadderReport {
    pub fn last(&self) -> Option<&SubordinationVerdict> {
        self.rungs.last().map(|(_, v)| v)
    }

    pub fn holds(&self) -> bool {
        self.last().is_some_and(SubordinationVerdict::holds)
    }
}

pub fn run_ladder(
    ladder: &[f64],
    mut check: impl FnMut(f64) -> Result<SubordinationVerdict>,
) -> Result<LadderReport> {
    let rungs = ladder
        .iter()
        .map(|&rho| check(rho).map(|v| (rho, v)))
        .collect::<Result<Vec<_>>>()?;
    let stable = match rungs.as_slice() {
        [.., (_, a), (_, b)] => {
            let scale = a.margin.abs().max(b.margin.abs());
            a.outcome == b.outcome && (a.margin - b.margin).abs() < 0.1 * scale
        }
        [(_, _)] => true,
        [] => false,
    };
    Ok(LadderReport { rungs, stable })
}
