mod common;

use common::*;
use hkdiag_core::branch::{all_branches, hensel_lift, newton_polygon, residual};
use hkdiag_core::poly::Bipoly;
use hkdiag_core::Rational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn constant_in_t(values: Vec<Rational>) -> Bipoly {
    Bipoly::new(values.into_iter().map(|x| vec![x]).collect())
}

/// `(t − t0)·q(t) + z·r(t, z)` with `q(t0) ≠ 0`, so `t0` is a simple root at `z = 0`.
fn simple_root_problem() -> impl Strategy<Value = (Bipoly, Rational)> {
    (small_rational(), nonzero_rational(), prop::collection::vec(small_rational(), 0..3), bipoly(4, 3)).prop_map(
        |(t0, c, tail, r)| {
            let linear = Bipoly::new(vec![vec![-t0.clone()], vec![Rational::one()]]);
            // q = c + (t − t0)·tail(t)
            let q = constant_in_t(vec![c]).add(&linear.mul(&constant_in_t(tail)));
            let zr = Bipoly::from_terms(r.terms().map(|(i, j, c)| (i, j + 1, c.clone())));
            (linear.mul(&q).add(&zr), t0)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn hensel_residual_vanishes((d, t0) in simple_root_problem(), prec in 1i64..12) {
        let s = hensel_lift(&d, &t0, prec).unwrap();
        prop_assert_eq!(s.prec(), prec);
        prop_assert_eq!(s.coeff(0).unwrap(), t0);
        let r = d.eval_series(&s);
        prop_assert!(r.valuation() >= prec, "residual {}", r);
    }

    #[test]
    fn every_branch_is_a_root(d in bipoly(5, 3), prec in 1i64..6) {
        prop_assume!(d.degree().is_some_and(|n| n >= 1));
        prop_assume!(d.outer_content() == 0);
        let result = all_branches(&d, prec);
        // deeper singularities are reported, not expanded
        prop_assume!(result.is_ok());
        let branches = result.unwrap();
        prop_assert_eq!(branches.len(), d.degree().unwrap());
        let counted: usize = newton_polygon(&d).iter().map(|(_, n)| n).sum();
        prop_assert_eq!(counted, d.degree().unwrap());
        for b in &branches {
            prop_assert!(residual(&d, &b.expansion).is_zero());
            let q = b.valuation.clone().unwrap();
            if b.expansion.body().is_zero() {
                prop_assert!(q >= b.expansion.prec());
            } else {
                prop_assert_eq!(b.expansion.valuation(), q.clone());
            }
            prop_assert_eq!(b.bounded, q >= Rational::zero());
        }
        // ramified branches come in adjacent conjugate pairs
        let mut k = 0;
        while k < branches.len() {
            if branches[k].is_ramified() {
                prop_assert!(branches[k].is_conjugate_of(&branches[k + 1]));
                k += 2;
            } else {
                k += 1;
            }
        }
    }
}
