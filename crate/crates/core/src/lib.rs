//! Exact formal solutions of the topological difference equation for the
//! orbifold projective line with two orbifold points, and the descendant
//! Gromov-Witten invariants extracted from them.

pub mod bernoulli;
pub mod error;
pub mod exact;
pub mod golden;
pub mod correlators;
pub mod persist;
pub mod tde;

pub use error::{Error, Result};
pub use exact::{IntMatrix, LaurentPoly, MatSeries, PuiseuxSeries, Rational, Var};
