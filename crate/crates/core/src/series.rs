//! Truncated complex power series about the origin.
//!
//! A [`PowerSeries`] of order `N` holds the Taylor coefficients
//! `c_0, ..., c_{N-1}`. Binary operations on two series of different order
//! truncate to the shorter one; the order of the result is always
//! `min(a.order(), b.order())`.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// The scalar field of every computation in this crate.
pub type ComplexScalar = Complex64;

#[inline]
pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if is_finite(z) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from its coefficients, lowest degree first.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OrderTooSmall {
                required: 1,
                actual: 0,
            });
        }
        if !coeffs.iter().copied().all(is_finite) {
            return Err(Error::NonFinite("series coefficients"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Internal constructor for coefficient vectors already known to be
    /// finite and nonempty.
    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Complex64::new(0.0, 0.0), order)
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let order = order.max(1);
        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); order];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// `1/(1 - z)`: every coefficient equals one. Identity of [`hadamard`](Self::hadamard).
    pub fn ones(order: usize) -> Self {
        Self {
            coeffs: alloc::vec![Complex64::new(1.0, 0.0); order.max(1)],
        }
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        let order = order.max(2);
        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); order];
        coeffs[1] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// The Koebe-type function `z/(1 - z) = z + z^2 + ...`.
    pub fn koebe(order: usize) -> Self {
        let mut s = Self::ones(order.max(2));
        s.coeffs[0] = Complex64::new(0.0, 0.0);
        s
    }

    /// `z + a z^2`, padded with zeros to `order`.
    pub fn quadratic(a: Complex64, order: usize) -> Result<Self> {
        check_finite(a, "quadratic coefficient")?;
        let order = order.max(3);
        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); order];
        coeffs[1] = Complex64::new(1.0, 0.0);
        coeffs[2] = a;
        Ok(Self { coeffs })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, zero past the truncation order.
    #[inline]
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Keeps the first `order` coefficients (zero-padding if longer).
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.max(1);
        let mut coeffs: Vec<Complex64> = self.coeffs.iter().take(order).copied().collect();
        coeffs.resize(order, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Termwise product `sum a_n b_n z^n`.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Multiplies each coefficient by `weight(n)`.
    pub fn map_indexed(&self, mut weight: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| weight(n, c))
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_indexed(|_, c| c * factor)
    }

    /// Exact term-by-term derivative. The result has order `N - 1`.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(Error::OrderTooSmall {
                required: 2,
                actual: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n + 1) as f64)
                .collect(),
        })
    }

    /// `f(z)/z` as an index shift; requires `f(0) = 0`.
    pub fn divide_by_z(&self) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() < 2 {
            return Err(Error::OrderTooSmall {
                required: 2,
                actual: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z f(z)`. The order grows by one so no coefficient is lost.
    pub fn multiply_by_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// `z f'(z)`, keeping the order.
    pub fn euler_derivative(&self) -> Self {
        self.map_indexed(|n, c| c * n as f64)
    }

    /// Horner evaluation without input validation.
    #[inline]
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Evaluates the truncated sum at `z`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_finite(z, "evaluation point")?;
        Ok(self.eval(z))
    }

    /// Value, first and second derivative at `z` in a single Horner pass.
    pub fn eval_with_derivatives(&self, z: Complex64) -> [Complex64; 3] {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        [p, d1, d2 * 2.0]
    }

    /// True when `f(0) = 0` and `f'(0) = 1` exactly (class A normalization).
    pub fn is_normalized(&self) -> bool {
        self.order() >= 2
            && self.coeffs[0] == Complex64::new(0.0, 0.0)
            && self.coeffs[1] == Complex64::new(1.0, 0.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.order().max(other.order());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: Self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: Self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        self.map_indexed(|_, c| -c)
    }
}

impl Mul<Complex64> for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: Complex64) -> PowerSeries {
        self.scale(rhs)
    }
}

/// A coefficient rule with a known bound on the ratio of consecutive
/// coefficient magnitudes.
pub trait CoefficientRule {
    fn coefficient(&self, n: usize) -> Complex64;

    /// Upper bound on `|c_{k+1} / c_k|` over all `k >= n`.
    fn ratio_bound(&self, n: usize) -> f64;

    fn series(&self, order: usize) -> PowerSeries {
        PowerSeries::from_vec_unchecked((0..order.max(1)).map(|n| self.coefficient(n)).collect())
    }
}

/// `exp(z)`: `c_n = 1/n!`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExpCoefficients;

impl CoefficientRule for ExpCoefficients {
    fn coefficient(&self, n: usize) -> Complex64 {
        let mut c = 1.0;
        for k in 1..=n {
            c /= k as f64;
        }
        Complex64::new(c, 0.0)
    }

    fn ratio_bound(&self, n: usize) -> f64 {
        1.0 / (n + 1) as f64
    }
}

/// Bounds `|sum_{n >= order} c_n z^n|` on `|z| <= radius` by a geometric
/// series started at the first omitted term.
pub fn tail_bound(rule: &impl CoefficientRule, order: usize, radius: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&radius) {
        return Err(Error::OutOfRange {
            name: "radius",
            value: radius,
        });
    }
    let ratio = rule.ratio_bound(order) * radius;
    if !(ratio < 1.0) {
        return Err(Error::TailNotCertified { order, ratio });
    }
    let first = rule.coefficient(order).norm() * libm::pow(radius, order as f64);
    Ok(first / (1.0 - ratio))
}
