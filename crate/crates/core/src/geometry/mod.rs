//! Numerical subordination and the analytic side conditions around it.
//!
//! For a univalent `F`, `f ≺ F` is equivalent to `f(0) = F(0)` together with
//! `f(D) ⊂ F(D)`. The checks here sample both functions on circles
//! `|z| = rho` and decide region inclusion with winding numbers against the
//! sampled image of the circle under `F`. No finite sample proves an
//! open-disk statement; every verdict carries a margin and a witness so
//! callers can judge how close to the boundary it was.

mod conditions;
mod constants;
mod curve;
mod subordination;

pub use conditions::{
    admissibility_check, admissibility_xi, check_convexity_condition, convexity_functional,
    key_inequality_check, key_inequality_sides, loewner_chain_check, Comparison, ConditionReport,
};
pub use constants::{gamma_lambda_kappa, gamma_mu, GAMMA_MAX};
pub use curve::{winding_number, BoundaryCurve, MIN_CURVE_SAMPLES, ON_CURVE_TOLERANCE};
pub use subordination::{
    check_disk_subordination, check_disk_subordination_on, check_subordination, disk_grid,
    run_ladder, LadderReport, Outcome, SubordinationVerdict, DEFAULT_LADDER,
};
