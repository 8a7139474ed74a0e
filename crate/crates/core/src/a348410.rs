//! The built-in instance `F(x, y) = (1+x)(1−x)² / (1 − x − x² + x³ − y)`,
//! whose diagonal `1 + z + 5z² + 19z³ + …` is OEIS A348410.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::branch::hensel_lift;
use crate::diagonal::{diagonal_gf, diagonal_oracle_terms, substitute_diagonal, RationalBivariate};
use crate::error::{Error, Result};
use crate::guess::{AlgebraicEquation, Recurrence};
use crate::poly::{Bipoly, PolyInTOverZ};
use crate::scalar::{int, Rational};
use crate::series::Series;

pub fn bivariate() -> RationalBivariate {
    RationalBivariate::new(
        Bipoly::from_int_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1)]),
        Bipoly::from_int_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1), (3, 0, 1), (0, 1, -1)]),
    )
    .unwrap()
}

/// `D(t, z) = −1 + t − z t² − z² t³ + z³ t⁴`.
pub fn denominator() -> PolyInTOverZ {
    substitute_diagonal(&bivariate()).denominator
}

/// The bounded branch `s₄ = 1 + z + 3z² + 9z³ + …`, mod `z^prec`.
pub fn s4(prec: i64) -> Result<Series<Rational>> {
    hensel_lift(&denominator(), &int(1), prec)
}

/// `f_{n,n}` for `n < count`, from the bivariate expansion.
pub fn terms(count: usize) -> Vec<Rational> {
    diagonal_oracle_terms(&bivariate(), count)
}

/// `(256z²+107z−32)g⁴ − (256z²+107z−32)g³ + 12z(8z+3)g² − 4z(4z+1)g + z² = 0`,
/// stored with rows indexed by the power of `g`.
pub fn quartic() -> AlgebraicEquation {
    AlgebraicEquation::from_i64(&[
        &[0, 0, 1],
        &[0, -4, -16],
        &[0, 36, 96],
        &[32, -107, -256],
        &[-32, 107, 256],
    ])
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn product(c: i128, factors: &[&[i128]]) -> Vec<BigInt> {
    factors
        .iter()
        .fold(vec![c], |acc, f| poly_mul(&acc, f))
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// The order-4 recurrence on the window `a_m, …, a_{m+4}`.
pub fn recurrence() -> Recurrence {
    Recurrence::new(vec![
        product(2680, &[&[1, 4], &[1, 2], &[3, 4]]),
        product(1, &[&[2909610, 5084335, 2915850, 552965]]),
        product(1, &[&[-2005464, -927852, 180504, 90732]]),
        product(-64, &[&[3, 1], &[12080, 8778, 1759]]),
        product(7168, &[&[4, 1], &[3, 1], &[7, 2]]),
    ])
    .unwrap()
}

/// Three computations of the diagonal plus the derivative factorization, all mod `z^checked_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormReport {
    pub residue_series: Series<Rational>,
    /// `(1 − s₄²z²) / (1 − z s₄ − 4z²s₄²)`
    pub s4_closed_form: Series<Rational>,
    /// The rewrite with denominator `256z² + 107z − 32`.
    pub rational_rewrite: Series<Rational>,
    /// `∂_t D` at `t = s₄`.
    pub derivative_lhs: Series<Rational>,
    /// `(1 − z s₄)(1 − z s₄ − 4z²s₄²)`
    pub derivative_rhs: Series<Rational>,
    pub all_equal: bool,
    pub derivative_identity: bool,
    pub checked_order: i64,
    /// Lowest exponent at which any pair differs.
    pub mismatch: Option<i64>,
}

fn in_s(terms: &[(usize, usize, i64)], s: &Series<Rational>) -> Series<Rational> {
    Bipoly::from_int_terms(terms).eval_series(s)
}

pub fn closed_form_check(prec: i64) -> Result<ClosedFormReport> {
    if prec < 1 {
        return Err(Error::InvalidArgument("precision must be at least 1"));
    }
    let s = s4(prec)?;
    let residue_series = diagonal_gf(&bivariate(), prec)?;

    let closed_den = in_s(&[(0, 0, 1), (1, 1, -1), (2, 2, -4)], &s);
    let s4_closed_form = in_s(&[(0, 0, 1), (2, 2, -1)], &s).div(&closed_den)?.truncate(prec);

    // terms (power of s, power of z, coefficient)
    let rewrite_num = in_s(
        &[
            (3, 3, 40),
            (3, 4, 16),
            (2, 3, 28),
            (2, 2, -32),
            (1, 1, -40),
            (1, 2, -67),
            (0, 0, 32),
            (0, 1, -35),
            (0, 2, -64),
        ],
        &s,
    );
    let rewrite_den = Series::from_poly(vec![int(-32), int(107), int(256)], prec);
    let rational_rewrite = rewrite_num.neg().div(&rewrite_den)?.truncate(prec);

    let derivative_lhs = denominator().derivative().eval_series(&s).truncate(prec);
    let derivative_rhs = in_s(&[(0, 0, 1), (1, 1, -1)], &s).mul(&closed_den).truncate(prec);

    let mismatch = [
        residue_series.first_mismatch(&s4_closed_form),
        residue_series.first_mismatch(&rational_rewrite),
        s4_closed_form.first_mismatch(&rational_rewrite),
        derivative_lhs.first_mismatch(&derivative_rhs),
    ]
    .into_iter()
    .flatten()
    .min();
    let all_equal = residue_series.agrees_with(&s4_closed_form) && residue_series.agrees_with(&rational_rewrite);
    let derivative_identity = derivative_lhs.agrees_with(&derivative_rhs);
    Ok(ClosedFormReport {
        residue_series,
        s4_closed_form,
        rational_rewrite,
        derivative_lhs,
        derivative_rhs,
        all_equal,
        derivative_identity,
        checked_order: prec,
        mismatch,
    })
}
