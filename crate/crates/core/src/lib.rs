//! Exact computations with Zhu-type algebras, their bimodules and dual vacuum
//! spaces on concrete vertex operator algebras truncated at a weight cutoff.

pub mod error;
pub mod exact;
pub mod induced;
pub mod verify;
pub mod voa;
pub mod zhu;

pub use error::{Error, Result};
pub use exact::{BasisKey, GradedVector, Rational};
