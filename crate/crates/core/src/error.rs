use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A NaN or infinite value reached a public operation.
    NonFinite(&'static str),
    /// The series is too short for the requested operation.
    OrderTooSmall { required: usize, actual: usize },
    /// Geometric majorization of the tail needs a ratio below one.
    TailNotCertified { order: usize, ratio: f64 },
    /// `c` must be nonzero.
    ZeroC,
    /// `kappa` is zero or a negative integer, so `(kappa)_n` vanishes.
    PochhammerPole { kappa: f64 },
    /// A parameter is outside the range where the statement applies.
    OutOfRange { name: &'static str, value: f64 },
    /// A function in class A must satisfy f(0) = 0 and f'(0) = 1.
    NotNormalized,
    /// Division by z requires a vanishing constant term.
    NonzeroConstantTerm,
    /// The principal branch of z^p is not defined on (-inf, 0].
    BranchCut,
    /// A point is too close to a sampled curve to assign a winding number.
    PointOnCurve { distance: f64 },
    /// A sampled boundary curve crosses itself.
    SelfIntersecting { first: usize, second: usize },
    /// The derivative vanishes somewhere a quotient needs it.
    VanishingDerivative { at_re: f64, at_im: f64 },
    /// Invalid grid or curve discretization.
    InvalidGrid(&'static str),
    /// Adaptive quadrature ran out of subdivisions.
    QuadratureDiverged { estimate: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::OrderTooSmall { required, actual } => {
                write!(f, "series order {actual} is below the required {required}")
            }
            Error::TailNotCertified { order, ratio } => write!(
                f,
                "cannot certify tail at order {order}: coefficient ratio bound {ratio} is not below 1"
            ),
            Error::ZeroC => f.write_str("parameter c must be nonzero"),
            Error::PochhammerPole { kappa } => {
                write!(f, "kappa = {kappa} is a non-positive integer")
            }
            Error::OutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::NotNormalized => {
                f.write_str("function is not normalized: need f(0) = 0 and f'(0) = 1")
            }
            Error::NonzeroConstantTerm => {
                f.write_str("cannot divide by z: constant coefficient is nonzero")
            }
            Error::BranchCut => f.write_str("argument lies on the branch cut (-inf, 0]"),
            Error::PointOnCurve { distance } => {
                write!(f, "point lies within {distance:e} of the curve")
            }
            Error::SelfIntersecting { first, second } => {
                write!(f, "boundary curve self-intersects (segments {first} and {second})")
            }
            Error::VanishingDerivative { at_re, at_im } => {
                write!(f, "derivative vanishes near z = {at_re} + {at_im}i")
            }
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::QuadratureDiverged { estimate } => {
                write!(f, "adaptive quadrature did not converge (error estimate {estimate:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
