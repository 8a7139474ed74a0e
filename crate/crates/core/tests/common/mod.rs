#![allow(dead_code)]

use hkdiag_core::poly::Bipoly;
use hkdiag_core::scalar::rat;
use hkdiag_core::{Rational, Series};
use proptest::prelude::*;

pub const CASES: u32 = 256;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// A Laurent series with valuation in `-2..=2` and up to six known terms.
pub fn series() -> impl Strategy<Value = Series<Rational>> {
    (-2i64..=2, prop::collection::vec(small_rational(), 0..6), 0i64..3)
        .prop_map(|(start, c, extra)| {
            let prec = start + c.len() as i64 + extra;
            Series::new(start, c, prec)
        })
}

/// A series whose leading coefficient is known to be nonzero.
pub fn unit_series() -> impl Strategy<Value = Series<Rational>> {
    (-2i64..=2, nonzero_rational(), prop::collection::vec(small_rational(), 0..5), 0i64..3).prop_map(
        |(start, lead, rest, extra)| {
            let mut c = vec![lead];
            c.extend(rest);
            let prec = start + c.len() as i64 + extra;
            Series::new(start, c, prec)
        },
    )
}

/// A bivariate polynomial with rows of degree `< rows`, entries of degree `< cols`.
pub fn bipoly(rows: usize, cols: usize) -> impl Strategy<Value = Bipoly> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 1..=rows).prop_map(|grid| {
        Bipoly::from_int_terms(
            &grid
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &c)| (i, j, c)))
                .collect::<Vec<_>>(),
        )
    })
}
