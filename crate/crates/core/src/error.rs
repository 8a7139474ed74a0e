use core::fmt;

use crate::scalar::Rational;

/// Everything that can go wrong inside the core algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by a series that is zero to its known precision.
    DivisionByZeroSeries,
    /// A coefficient was requested at or beyond the truncation order.
    BeyondPrecision { exponent: i64, prec: i64 },
    InvalidArgument(&'static str),
    /// Newton lifting was started from a point that is not a simple root at `z = 0`.
    NotASimpleRoot,
    /// Resolving a branch needs more than one quadratic extension or ramification above 2.
    UnsupportedRamification(&'static str),
    /// A bounded branch collides with another one at `z = 0`.
    MultipleBoundedRoot { root: Rational, multiplicity: usize },
    /// `∂D/∂t` vanished on a branch, so the simple-pole residue formula does not apply.
    ResidueUndefined,
    InsufficientData { needed: usize, got: usize },
    NoRelation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZeroSeries => f.write_str("division by a series that is zero to its precision"),
            Error::BeyondPrecision { exponent, prec } => {
                write!(f, "coefficient of z^{exponent} requested but series is only known mod z^{prec}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotASimpleRoot => f.write_str("starting value is not a simple root at z = 0"),
            Error::UnsupportedRamification(msg) => write!(f, "unsupported branch structure: {msg}"),
            Error::MultipleBoundedRoot { root, multiplicity } => write!(
                f,
                "bounded root t0 = {root} has multiplicity {multiplicity} at z = 0"
            ),
            Error::ResidueUndefined => f.write_str("dD/dt vanishes on a bounded branch"),
            Error::InsufficientData { needed, got } => {
                write!(f, "insufficient data: need at least {needed} terms, got {got}")
            }
            Error::NoRelation => f.write_str("no relation found within the given bounds"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
