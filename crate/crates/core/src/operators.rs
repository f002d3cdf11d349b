//! Diagonal coefficient operators on normalized functions
//! `f(z) = z + a_2 z^2 + a_3 z^3 + ...`.
//!
//! `B_{kappa,c}(f) = z u_{p,b,c} * f` multiplies `a_{n+1}` by the `n`-th
//! coefficient of `u_{p,b,c}`, and the generalized Libera operator
//! `F_mu(f)(z) = (mu+1) z^{-mu} int_0^z t^{mu-1} f(t) dt` multiplies `a_n` by
//! `(mu+1)/(mu+n)`. Both are implemented as exact coefficient maps; the
//! integral form is only evaluated by [`libera_quadrature_oracle`].

use num_complex::Complex64;

use crate::bessel::{u_series, BesselParameters};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::series::{check_finite, PowerSeries};
use crate::{Error, Result};

/// `lambda` in `[0, 1)` together with Bessel parameters satisfying
/// `kappa > -1`.
///
/// Only the indices `kappa + 1` and `kappa + 2` are ever used, so `kappa = 0`
/// is allowed even though `u` itself has a pole there; build such specs with
/// [`BlendSpec::from_components`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BlendSpec {
    lambda: f64,
    /// Parameters with index `kappa + 1`.
    first: BesselParameters,
}

impl BlendSpec {
    pub fn new(lambda: f64, params: BesselParameters) -> Result<Self> {
        params.require_kappa_above_minus_one()?;
        Self::from_first(lambda, params.shifted(1)?)
    }

    /// Spec for the parameters `(p, b, c)`, whose index
    /// `kappa = p + (b+1)/2` may be any value above `-1`.
    pub fn from_components(lambda: f64, p: f64, b: f64, c: Complex64) -> Result<Self> {
        let kappa = p + (b + 1.0) / 2.0;
        if !(kappa > -1.0) {
            return Err(Error::OutOfRange {
                name: "kappa",
                value: kappa,
            });
        }
        Self::from_first(lambda, BesselParameters::new(p + 1.0, b, c)?)
    }

    fn from_first(lambda: f64, first: BesselParameters) -> Result<Self> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::OutOfRange {
                name: "lambda",
                value: lambda,
            });
        }
        Ok(Self { lambda, first })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kappa(&self) -> f64 {
        self.first.kappa() - 1.0
    }

    /// Parameters with index `kappa + 1`.
    pub fn first(&self) -> &BesselParameters {
        &self.first
    }

    /// Parameters with index `kappa + 2`.
    pub fn second(&self) -> Result<BesselParameters> {
        self.first.shifted(1)
    }

    /// `(kappa + 1) / (1 - lambda)`, the constant that recurs in the
    /// convexity and chain conditions.
    pub fn chain_constant(&self) -> f64 {
        (self.kappa() + 1.0) / (1.0 - self.lambda)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LiberaSpec {
    mu: f64,
}

impl LiberaSpec {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > -1.0) || !mu.is_finite() {
            return Err(Error::OutOfRange {
                name: "mu",
                value: mu,
            });
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Multiplier of `a_n`: `(mu + 1) / (mu + n)`.
    pub fn weight(&self, n: usize) -> f64 {
        (self.mu + 1.0) / (self.mu + n as f64)
    }
}

fn require_normalized(f: &PowerSeries) -> Result<()> {
    if f.is_normalized() {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

/// `B_{kappa,c}(f)` for `kappa = params.kappa()`.
pub fn apply_b(params: &BesselParameters, f: &PowerSeries) -> Result<PowerSeries> {
    require_normalized(f)?;
    let u = u_series(params, f.order() - 1)?;
    Ok(f.hadamard(&u.multiply_by_z()))
}

/// `B_{kappa,c}(f)(z) / z`, a function with value 1 at the origin.
pub fn apply_b_over_z(params: &BesselParameters, f: &PowerSeries) -> Result<PowerSeries> {
    apply_b(params, f)?.divide_by_z()
}

/// Largest coefficient discrepancy in
/// `z (B_{kappa+2,c} f)' = (kappa+1) B_{kappa+1,c} f - kappa B_{kappa+2,c} f`.
pub fn recurrence_residual(params: &BesselParameters, f: &PowerSeries) -> Result<f64> {
    let kappa = params.kappa();
    let b1 = apply_b(&params.shifted(1)?, f)?;
    let b2 = apply_b(&params.shifted(2)?, f)?;
    let lhs = b2.euler_derivative();
    let rhs = &b1.scale(Complex64::new(kappa + 1.0, 0.0)) - &b2.scale(Complex64::new(kappa, 0.0));
    Ok(lhs.max_abs_diff(&rhs))
}

/// `Phi = (1 - lambda) B_{kappa+1,c}(g)/z + lambda B_{kappa+2,c}(g)/z`.
pub fn blend_phi(spec: &BlendSpec, g: &PowerSeries) -> Result<PowerSeries> {
    let first = apply_b_over_z(spec.first(), g)?;
    let second = apply_b_over_z(&spec.second()?, g)?;
    let lambda = spec.lambda();
    // first + lambda (second - first) keeps the constant term exactly 1
    Ok(&first + &(&second - &first).scale(Complex64::new(lambda, 0.0)))
}

/// `F_mu(f)` as the coefficient map `a_n -> a_n (mu+1)/(mu+n)`. Requires
/// `f(0) = 0`; a normalized input stays normalized.
pub fn libera_transform(spec: &LiberaSpec, f: &PowerSeries) -> Result<PowerSeries> {
    if f.coeff(0) != Complex64::new(0.0, 0.0) {
        return Err(Error::NonzeroConstantTerm);
    }
    Ok(f.map_indexed(|n, a| if n == 0 { a } else { a * spec.weight(n) }))
}

/// Evaluates `F_mu(f)(z)` straight from its integral definition along the
/// segment `[0, z]`.
///
/// With `t = s z` the integral becomes `(mu+1) int_0^1 s^{mu-1} f(s z) ds`;
/// substituting `s = v^{1/(mu+1)}` absorbs the weight and leaves
/// `int_0^1 f(s z)/s dv`, whose integrand tends to `f'(0) z` at `v = 0`.
pub fn libera_quadrature_oracle(
    spec: &LiberaSpec,
    f: &PowerSeries,
    z: Complex64,
) -> Result<Complex64> {
    check_finite(z, "Libera evaluation point")?;
    if !(z.norm() < 1.0) {
        return Err(Error::OutOfRange {
            name: "|z|",
            value: z.norm(),
        });
    }
    if f.coeff(0) != Complex64::new(0.0, 0.0) {
        return Err(Error::NonzeroConstantTerm);
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let exponent = 1.0 / (spec.mu() + 1.0);
    let opts = QuadratureOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_intervals: 4000,
    };
    let result = integrate(
        |v| {
            let s = libm::pow(v, exponent);
            if s == 0.0 {
                // v^{1/(mu+1)} underflowed: the integrand is f'(0) z there
                return Ok(f.coeff(1) * z);
            }
            Ok(f.eval(z * s) / s)
        },
        0.0,
        1.0,
        opts,
    )?;
    Ok(result.value)
}

/// Largest coefficient discrepancy in
/// `z (B_{kappa,c}(F_mu f))' = (mu+1) B_{kappa,c}(f) - mu B_{kappa,c}(F_mu f)`.
pub fn libera_recurrence_residual(
    spec: &LiberaSpec,
    params: &BesselParameters,
    f: &PowerSeries,
) -> Result<f64> {
    let bf = apply_b(params, f)?;
    let bff = apply_b(params, &libera_transform(spec, f)?)?;
    let lhs = bff.euler_derivative();
    let rhs = &bf.scale(Complex64::new(spec.mu() + 1.0, 0.0))
        - &bff.scale(Complex64::new(spec.mu(), 0.0));
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::ClosedFormTag;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quad(a: f64) -> PowerSeries {
        PowerSeries::quadratic(c(a, 0.0), 8).unwrap()
    }

    #[test]
    fn apply_b_examples() {
        let params = BesselParameters::new(0.3, 1.0, c(1.0, 2.0)).unwrap();
        let id = PowerSeries::identity(6);
        assert_eq!(apply_b(&params, &id).unwrap(), id);

        let koebe = PowerSeries::koebe(10);
        let zu = u_series(&params, 9).unwrap().multiply_by_z();
        assert_eq!(apply_b(&params, &koebe).unwrap(), zu);

        assert_eq!(
            apply_b(&params, &PowerSeries::from_real(&[1.0, 1.0]).unwrap()),
            Err(Error::NotNormalized)
        );
    }

    #[test]
    fn apply_b_on_quadratic_is_linear_after_shift() {
        // B_{kappa+1}(z + a z^2)/z = 1 - a c z / (4 (kappa + 1))
        let params = BesselParameters::new(-0.5, 1.0, c(0.7, -0.2)).unwrap();
        let a = c(0.3, 0.1);
        let g = PowerSeries::quadratic(a, 5).unwrap();
        let phi = apply_b_over_z(&params.shifted(1).unwrap(), &g).unwrap();
        let expected = -a * params.c() / (4.0 * (params.kappa() + 1.0));
        assert_eq!(phi.coeff(0), c(1.0, 0.0));
        assert!((phi.coeff(1) - expected).norm() < 1e-16);
        assert!(phi.coeffs()[2..].iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn recurrence_on_identity_is_exact() {
        let params = BesselParameters::new(0.1, 1.0, c(1.0, 1.0)).unwrap();
        assert_eq!(
            recurrence_residual(&params, &PowerSeries::identity(8)).unwrap(),
            0.0
        );
    }

    #[test]
    fn recurrence_second_coefficient_by_hand() {
        let params = BesselParameters::new(0.2, 0.6, c(1.3, -0.4)).unwrap();
        let kappa = params.kappa();
        let g = quad(1.0);
        let q = -params.c() / 4.0;
        let lhs = q * 2.0 / (kappa + 2.0);
        let rhs = q * (1.0 - kappa / (kappa + 2.0));
        assert!((lhs - rhs).norm() < 1e-15);
        let b2 = apply_b(&params.shifted(2).unwrap(), &g).unwrap();
        assert!((b2.euler_derivative().coeff(2) - lhs).norm() < 1e-15);
        assert!(recurrence_residual(&params, &g).unwrap() < 1e-15);
    }

    #[test]
    fn blend_examples() {
        let spec = BlendSpec::new(0.5, ClosedFormTag::CosSqrt.params()).unwrap();
        assert_eq!(
            blend_phi(&spec, &PowerSeries::identity(5)).unwrap(),
            PowerSeries::constant(c(1.0, 0.0), 4)
        );

        // kappa = 1/2, lambda = 1/2: 1 - (2a/15) z
        let a = 0.35;
        let phi = blend_phi(&spec, &quad(a)).unwrap();
        assert!((phi.coeff(1) - c(-2.0 * a / 15.0, 0.0)).norm() < 1e-16);

        let spec0 = BlendSpec::new(0.0, ClosedFormTag::CosSqrt.params()).unwrap();
        let g = PowerSeries::koebe(12);
        let psi = apply_b_over_z(spec0.first(), &g).unwrap();
        assert_eq!(blend_phi(&spec0, &g).unwrap(), psi);
    }

    #[test]
    fn blend_at_kappa_zero() {
        // p = -1/2, b = 0 gives kappa = 0, where u_{p,b,c} itself is undefined
        assert!(BesselParameters::real(-0.5, 0.0, 1.0).is_err());
        let spec = BlendSpec::from_components(0.0, -0.5, 0.0, c(1.0, 0.0)).unwrap();
        assert_eq!(spec.kappa(), 0.0);
        let phi = blend_phi(&spec, &quad(0.4)).unwrap();
        assert!((phi.coeff(1) - c(-0.1, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn blend_spec_validation() {
        let params = ClosedFormTag::SincSqrt.params();
        assert!(BlendSpec::new(1.0, params).is_err());
        assert!(BlendSpec::new(-0.1, params).is_err());
        let low = BesselParameters::real(-2.5, 1.0, 1.0).unwrap();
        assert!(BlendSpec::new(0.2, low).is_err());
    }

    #[test]
    fn libera_examples() {
        for mu in [-0.5, 0.0, 1.0, 7.0] {
            let spec = LiberaSpec::new(mu).unwrap();
            let id = PowerSeries::identity(5);
            assert_eq!(libera_transform(&spec, &id).unwrap(), id);
        }
        let f = quad(1.0);
        let one = libera_transform(&LiberaSpec::new(1.0).unwrap(), &f).unwrap();
        assert!((one.coeff(2) - c(2.0 / 3.0, 0.0)).norm() < 1e-16);
        let zero = libera_transform(&LiberaSpec::new(0.0).unwrap(), &f).unwrap();
        assert_eq!(zero.coeff(2), c(0.5, 0.0));
        assert!(LiberaSpec::new(-1.0).is_err());
    }

    #[test]
    fn libera_quadrature_examples() {
        let fixed = libera_quadrature_oracle(
            &LiberaSpec::new(2.0).unwrap(),
            &PowerSeries::identity(4),
            c(0.5, 0.0),
        )
        .unwrap();
        assert!((fixed - c(0.5, 0.0)).norm() < 1e-14);

        let v = libera_quadrature_oracle(&LiberaSpec::new(1.0).unwrap(), &quad(1.0), c(0.3, 0.0))
            .unwrap();
        assert!((v - c(0.36, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn libera_quadrature_handles_mu_near_minus_one() {
        let spec = LiberaSpec::new(-0.95).unwrap();
        let f = quad(0.4);
        let z = c(-0.3, 0.6);
        let exact = libera_transform(&spec, &f).unwrap().eval(z);
        let oracle = libera_quadrature_oracle(&spec, &f, z).unwrap();
        assert!((exact - oracle).norm() < 1e-10);
    }

    #[test]
    fn libera_recurrence_on_identity() {
        let r = libera_recurrence_residual(
            &LiberaSpec::new(1.5).unwrap(),
            &ClosedFormTag::SincSqrt.params(),
            &PowerSeries::identity(4),
        )
        .unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn libera_recurrence_second_coefficient_by_hand() {
        // degree 2: LHS 2 a t b_1, RHS (mu+1) a b_1 - mu a t b_1 with t = (mu+1)/(mu+2)
        let mu = 1.5;
        let params = ClosedFormTag::SincSqrt.params();
        let t = (mu + 1.0) / (mu + 2.0);
        let b1 = -0.25 / params.kappa();
        let lhs = 2.0 * t * b1;
        let rhs = (mu + 1.0) * b1 - mu * t * b1;
        assert!((lhs - rhs).abs() < 1e-16);
        let spec = LiberaSpec::new(mu).unwrap();
        let f = quad(1.0);
        let bff = apply_b(&params, &libera_transform(&spec, &f).unwrap()).unwrap();
        assert!((bff.euler_derivative().coeff(2).re - lhs).abs() < 1e-16);
    }
}
