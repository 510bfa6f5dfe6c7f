//! Exact scalars, graded vectors, echelon forms and truncated Laurent series.

pub mod dual;
pub mod echelon;
pub mod laurent;
pub mod rational;
pub mod vector;

pub use dual::DualFunctional;
pub use echelon::{Ambient, Membership, Provenance, SubspaceAtCutoff};
pub use laurent::{binom_expand, binom_expand_at, Coefficient, Series, TruncatedLaurent};
pub use rational::{binomial, inv_factorial, Rational};
pub use vector::{BasisKey, GradedVector};
