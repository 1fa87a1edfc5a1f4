//! Exact arithmetic: rationals, Laurent polynomials, truncated Puiseux series
//! and matrices of them.

pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod series;

pub use laurent::{LaurentPoly, Var};
pub use matrix::{IntMatrix, MatSeries};
pub use rational::Rational;
pub use series::PuiseuxSeries;
