//! Numerical toolkit for the class U(lambda) of normalized analytic functions
//! `f` on the unit disk with `|(z/f)^2 f' - 1| < lambda`.
//!
//! A candidate is held through `q = z/f` as a truncated power series. The
//! crate provides series arithmetic, closed-form self-maps of the disk,
//! membership sweeps, subordination checks, and the coefficient bounds with
//! the constructions that make them sharp.

// `!(x < y)` is used on purpose so that NaN inputs fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod diskfun;
pub mod error;
pub mod quad;
pub mod region;
pub mod sampling;
pub mod search;
pub mod series;
pub mod uclass;

pub use diskfun::{DiskFunction, DiskSpec};
pub use error::{Error, Result};
pub use series::TruncatedSeries;
pub use uclass::{GridSpec, MembershipReport, UCandidate, Verdict};
