use crate::{Error, Result};

/// `(2 - sqrt 2) / 4`, the largest value either constant can take.
pub const GAMMA_MAX: f64 = 0.146_446_609_406_726_2;

/// `gamma_{lambda,kappa} = (A^2 + B^2 - sqrt(A^4 + B^4)) / (4 A B)` with
/// `A = 1 - lambda`, `B = kappa + 1`.
///
/// Evaluated in the conjugate form `A B / (2 (A^2 + B^2 + sqrt(A^4 + B^4)))`,
/// which has no cancellation when one of `A`, `B` dominates.
pub fn gamma_lambda_kappa(lambda: f64, kappa: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        });
    }
    if !(kappa > -1.0) || !kappa.is_finite() {
        return Err(Error::OutOfRange {
            name: "kappa",
            value: kappa,
        });
    }
    Ok(conjugate_form(1.0 - lambda, kappa + 1.0))
}

/// `gamma_mu = (1 + (mu+1)^2 - sqrt(1 + (mu+1)^4)) / (4 (mu+1))`, the
/// `lambda = 0` member of the same family.
pub fn gamma_mu(mu: f64) -> Result<f64> {
    if !(mu > -1.0) || !mu.is_finite() {
        return Err(Error::OutOfRange {
            name: "mu",
            value: mu,
        });
    }
    Ok(conjugate_form(1.0, mu + 1.0))
}

fn conjugate_form(a: f64, b: f64) -> f64 {
    let (a2, b2) = (a * a, b * b);
    a * b / (2.0 * (a2 + b2 + libm::hypot(a2, b2)))
}
