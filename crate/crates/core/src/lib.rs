//! Generalized Bessel functions of the first kind, the convolution operator
//! `B(kappa, c)`, the generalized Libera operator and a numerical
//! subordination oracle for functions analytic in the unit disk.
//!
//! Everything here is pure computation over truncated complex power series.
//! Build with `default-features = false` for `no_std` targets; only `alloc`
//! is required.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bessel;
mod error;
pub mod gamma;
pub mod geometry;
pub mod grid;
pub mod operators;
pub mod quadrature;
pub mod series;

pub use error::{Error, Result};
pub use grid::EvaluationGrid;
pub use series::{ComplexScalar, PowerSeries};

/// Default truncation order for every series built by this crate.
pub const DEFAULT_ORDER: usize = 64;
