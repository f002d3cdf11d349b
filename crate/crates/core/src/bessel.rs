//! Generalized Bessel functions of the first kind.
//!
//! `w_{p,b,c}` solves `z^2 w'' + b z w' + (c z^2 - p^2 + (1-b) p) w = 0` and
//! `u_{p,b,c}(z) = 2^p Gamma(kappa) z^{-p/2} w_{p,b,c}(sqrt z)` is its
//! normalized entire companion with `u(0) = 1`, where
//! `kappa = p + (b+1)/2`. The Taylor coefficients of `u` are
//!
//! ```text
//! c_n = (-c/4)^n / ((kappa)_n n!)
//! ```
//!
//! and are produced by the ratio recurrence
//! `c_{n+1} = c_n (-c/4) / ((kappa + n)(n + 1))`, never through Gamma.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::gamma;
use crate::grid::{grid_maximum, EvaluationGrid, Extremum};
use crate::series::{check_finite, tail_bound, CoefficientRule, PowerSeries};
use crate::{Error, Result, DEFAULT_ORDER};

/// Largest order [`u_series_certified`] will try before giving up.
pub const MAX_CERTIFIED_ORDER: usize = 4096;

/// `(p, b, c)` with `c != 0` and `kappa = p + (b+1)/2` not in `{0, -1, -2, ...}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BesselParameters {
    p: f64,
    b: f64,
    c: Complex64,
}

impl BesselParameters {
    pub fn new(p: f64, b: f64, c: Complex64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite("p"));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite("b"));
        }
        check_finite(c, "c")?;
        if c == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroC);
        }
        let kappa = p + (b + 1.0) / 2.0;
        if is_nonpositive_integer(kappa) {
            return Err(Error::PochhammerPole { kappa });
        }
        Ok(Self { p, b, c })
    }

    /// Shorthand for real `c`.
    pub fn real(p: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(p, b, Complex64::new(c, 0.0))
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn kappa(&self) -> f64 {
        self.p + (self.b + 1.0) / 2.0
    }

    /// `(p + k, b, c)`, i.e. the same family with `kappa` raised by `k`.
    /// `B_{kappa+1,c}` is the operator of `self.shifted(1)`.
    pub fn shifted(&self, k: i32) -> Result<Self> {
        Self::new(self.p + f64::from(k), self.b, self.c)
    }

    /// The theorems about `B_{kappa+1,c}` and `B_{kappa+2,c}` need `kappa > -1`.
    pub fn require_kappa_above_minus_one(&self) -> Result<()> {
        let kappa = self.kappa();
        if kappa > -1.0 {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                name: "kappa",
                value: kappa,
            })
        }
    }
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

/// Rising factorial `a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Coefficient rule of `u_{p,b,c}`.
#[derive(Clone, Copy, Debug)]
pub struct UCoefficients {
    kappa: f64,
    c: Complex64,
}

impl UCoefficients {
    pub fn new(params: &BesselParameters) -> Self {
        Self {
            kappa: params.kappa(),
            c: params.c(),
        }
    }

    #[inline]
    fn step(&self, n: usize) -> Complex64 {
        -self.c / (4.0 * (self.kappa + n as f64) * (n + 1) as f64)
    }
}

impl CoefficientRule for UCoefficients {
    fn coefficient(&self, n: usize) -> Complex64 {
        (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * self.step(k))
    }

    fn ratio_bound(&self, n: usize) -> f64 {
        // |c_{k+1}/c_k| = |c| / (4 |kappa + k| (k + 1)) is decreasing once
        // kappa + k > 0; before that each index is checked explicitly.
        let mut bound: f64 = 0.0;
        let mut k = n;
        loop {
            bound = bound.max(self.step(k).norm());
            if self.kappa + k as f64 > 0.0 {
                return bound;
            }
            k += 1;
        }
    }

    fn series(&self, order: usize) -> PowerSeries {
        let order = order.max(1);
        let mut coeffs = alloc::vec::Vec::with_capacity(order);
        let mut c = Complex64::new(1.0, 0.0);
        for n in 0..order {
            coeffs.push(c);
            c *= self.step(n);
        }
        PowerSeries::from_vec_unchecked(coeffs)
    }
}

/// Taylor coefficients of `u_{p,b,c}` up to order `order`.
pub fn u_series(params: &BesselParameters, order: usize) -> Result<PowerSeries> {
    if order == 0 {
        return Err(Error::OrderTooSmall {
            required: 1,
            actual: 0,
        });
    }
    Ok(UCoefficients::new(params).series(order))
}

/// `u_{p,b,c}` truncated at the smallest order `N >= DEFAULT_ORDER` (doubling)
/// whose certified tail on `|z| <= radius` is below `tolerance`.
pub fn u_series_certified(
    params: &BesselParameters,
    radius: f64,
    tolerance: f64,
) -> Result<PowerSeries> {
    let rule = UCoefficients::new(params);
    let mut order = DEFAULT_ORDER;
    loop {
        match tail_bound(&rule, order, radius) {
            Ok(bound) if bound <= tolerance => return Ok(rule.series(order)),
            Ok(_) | Err(Error::TailNotCertified { .. }) if order < MAX_CERTIFIED_ORDER => {
                order *= 2;
            }
            Ok(_) => {
                return Err(Error::TailNotCertified {
                    order,
                    ratio: rule.ratio_bound(order) * radius,
                })
            }
            Err(e) => return Err(e),
        }
    }
}

/// Value of `w_{p,b,c}(z) = (z/2)^p / Gamma(kappa) * u_{p,b,c}(z^2)` on the
/// principal branch. `z` must avoid `(-inf, 0]`.
pub fn w_value(params: &BesselParameters, z: Complex64, order: usize) -> Result<Complex64> {
    check_finite(z, "w argument")?;
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut);
    }
    let u = u_series(params, order)?;
    let prefactor = (z / 2.0).powf(params.p()) / gamma(params.kappa())?;
    Ok(prefactor * u.eval(z * z))
}

/// Elementary closed forms of `u_{p,1,1}` for half-integer `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ClosedFormTag {
    /// `u_{-1/2,1,1}(z) = cos sqrt z`
    CosSqrt,
    /// `u_{1/2,1,1}(z) = sin sqrt z / sqrt z`
    SincSqrt,
    /// `u_{3/2,1,1}(z) = 3 (sin sqrt z / (z sqrt z) - cos sqrt z / z)`
    ThreeHalvesTrig,
}

impl ClosedFormTag {
    pub const ALL: [ClosedFormTag; 3] = [Self::CosSqrt, Self::SincSqrt, Self::ThreeHalvesTrig];

    pub fn params(self) -> BesselParameters {
        let p = match self {
            Self::CosSqrt => -0.5,
            Self::SincSqrt => 0.5,
            Self::ThreeHalvesTrig => 1.5,
        };
        BesselParameters {
            p,
            b: 1.0,
            c: Complex64::new(1.0, 0.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CosSqrt => "cos_sqrt",
            Self::SincSqrt => "sinc_sqrt",
            Self::ThreeHalvesTrig => "three_halves_trig",
        }
    }
}

/// Below this modulus the `ThreeHalvesTrig` formula loses digits to
/// cancellation and its Taylor expansion is used instead.
const THREE_HALVES_SMALL_Z: f64 = 1e-2;

/// Evaluates the elementary closed form. Every formula is even in
/// `sqrt z`, so the branch of the root does not matter.
pub fn closed_form_eval(tag: ClosedFormTag, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = z.sqrt();
    match tag {
        ClosedFormTag::CosSqrt => s.cos(),
        ClosedFormTag::SincSqrt => {
            if z == Complex64::new(0.0, 0.0) {
                one
            } else {
                s.sin() / s
            }
        }
        ClosedFormTag::ThreeHalvesTrig => {
            if z.norm() < THREE_HALVES_SMALL_Z {
                three_halves_series(z)
            } else {
                three_halves_direct(z)
            }
        }
    }
}

fn three_halves_direct(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    (s.sin() / (z * s) - s.cos() / z) * 3.0
}

/// `3 sum_n (-z)^n (2n+2) / (2n+3)!`, truncated after eight terms.
fn three_halves_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    let mut fact = 6.0;
    for n in 0..8 {
        sum += zn * (3.0 * (2 * n + 2) as f64 / fact);
        zn *= -z;
        fact *= ((2 * n + 4) * (2 * n + 5)) as f64;
    }
    sum
}

/// `4 z^2 u'' + 2(2p+b+1) z u' + c z u` at one point, with exact series
/// derivatives.
pub fn u_ode_residual_at(params: &BesselParameters, u: &PowerSeries, z: Complex64) -> Complex64 {
    let [v, d1, d2] = u.eval_with_derivatives(z);
    let middle = 2.0 * (2.0 * params.p() + params.b() + 1.0);
    z * z * d2 * 4.0 + z * d1 * middle + params.c() * z * v
}

/// Supremum over the grid of the `u` equation residual.
pub fn ode_residual_u(
    params: &BesselParameters,
    u: &PowerSeries,
    grid: &EvaluationGrid,
) -> Result<Extremum> {
    grid_maximum(grid, |z| Ok(u_ode_residual_at(params, u, z).norm()))
}

/// Relative step of the five-point stencils used for `w'` and `w''`.
///
/// The second-difference rounding error scales like `eps / h^2`, so the
/// step sits near `eps^(1/6)` rather than at the first-derivative optimum.
pub const W_STENCIL_STEP: f64 = 1e-3;

/// `z^2 w'' + b z w' + (c z^2 - p^2 + (1-b) p) w` at `z` for an arbitrary
/// candidate `w`, with derivatives from radial five-point differences.
pub fn w_ode_residual_with(
    params: &BesselParameters,
    z: Complex64,
    w: impl Fn(Complex64) -> Result<Complex64>,
) -> Result<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::BranchCut);
    }
    let dir = z / r;
    let h = W_STENCIL_STEP * r;
    let at = |k: f64| w(z + dir * (k * h));
    let (m2, m1, w0, p1, p2) = (at(-2.0)?, at(-1.0)?, at(0.0)?, at(1.0)?, at(2.0)?);
    let d1 = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / (dir * (12.0 * h));
    let d2 = (-m2 + m1 * 16.0 - w0 * 30.0 + p1 * 16.0 - p2) / (dir * dir * (12.0 * h * h));
    let (p, b, c) = (params.p(), params.b(), params.c());
    Ok(z * z * d2 + z * d1 * b + (c * z * z - (p * p - (1.0 - b) * p)) * w0)
}

/// The `w` equation residual of [`w_value`] itself.
pub fn w_ode_residual_at(
    params: &BesselParameters,
    z: Complex64,
    order: usize,
) -> Result<Complex64> {
    let u = u_series(params, order)?;
    let scale = gamma(params.kappa())?;
    let p = params.p();
    w_ode_residual_with(params, z, |x| {
        check_finite(x, "w argument")?;
        if x.im == 0.0 && x.re <= 0.0 {
            return Err(Error::BranchCut);
        }
        Ok((x / 2.0).powf(p) / scale * u.eval(x * x))
    })
}

/// Supremum over the grid of the `w` equation residual. The grid must not
/// contain points on the negative real axis (use an odd angle count).
pub fn ode_residual_w(
    params: &BesselParameters,
    grid: &EvaluationGrid,
    order: usize,
) -> Result<Extremum> {
    if grid
        .points()
        .any(|pt| pt.z.im.abs() <= 1e-12 * pt.z.norm() && pt.z.re < 0.0)
    {
        return Err(Error::BranchCut);
    }
    grid_maximum(grid, |z| {
        // golden-section refinement may step onto the cut; stay off it
        if z.im.abs() <= 1e-12 * z.norm() && z.re < 0.0 {
            return Ok(0.0);
        }
        Ok(w_ode_residual_at(params, z, order)?.norm())
    })
}

/// `J_{1/2}(x) = sqrt(2/(pi x)) sin x`, for tests and reports.
pub fn spherical_half_order_j(x: f64) -> f64 {
    libm::sqrt(2.0 / (PI * x)) * libm::sin(x)
}
