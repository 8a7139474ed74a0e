//! Exact series algebra for diagonals of rational bivariate generating functions.
//!
//! The pipeline: substitute `x = z·t`, `y = 1/t` into `F(x, y)`, expand the
//! roots of the resulting denominator in `t` as Puiseux series in `z`, and
//! sum residues at the branches that stay bounded as `z → 0`. Companion
//! modules guess algebraic equations and P-recurrences from coefficient
//! lists, and check generalized-binomial-series identities.

#![no_std]

extern crate alloc;

pub mod a348410;
pub mod branch;
pub mod diagonal;
pub mod error;
pub mod guess;
pub mod harmonic;
pub mod linalg;
pub mod poly;
pub mod puiseux;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Field, QuadExt, Rational};
pub use series::Series;
