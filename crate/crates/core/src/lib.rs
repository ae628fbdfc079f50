//! Rigorous verification of Robin's, Lagarias' and Kaneko-Lagarias' inequalities.
//!
//! Exact integer and rational arithmetic lives in [`arith`]; every transcendental quantity is
//! an outward-rounded [`numerics::Interval`], and every inequality check returns a
//! three-valued [`numerics::Verdict`].

pub mod arith;
pub mod bounds;
pub mod error;
pub mod lagarias;
pub mod numerics;
pub mod report;
pub mod robin;
pub mod superabundant;

pub use error::{Error, Result};
