//! Acceptance criteria for the built-in instance. Each test prints one
//! `PASS`/`FAIL` line before asserting, so `cargo test --test acceptance --
//! --nocapture` gives the full table.

use std::process::Command;

use hkdiag_core::a348410;
use hkdiag_core::branch::{all_branches, expand_branch, hensel_lift, residual, sum_expansions, Branch};
use hkdiag_core::diagonal::{diagonal_gf, diagonal_oracle};
use hkdiag_core::guess::{guess_algeq, guess_rec, verify_algeq, verify_rec, DEFAULT_MARGIN};
use hkdiag_core::harmonic::{gkp561_check, harmonic_gf_check, harmonic_identity_check, log_identity_check};
use hkdiag_core::poly::Bipoly;
use hkdiag_core::puiseux::PuiseuxSeries;
use hkdiag_core::scalar::{int, rat};
use hkdiag_core::{QuadExt, Rational, Series};
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn report(n: u32, name: &str, passed: bool, detail: &str) {
    let mark = if passed { "PASS" } else { "FAIL" };
    if detail.is_empty() {
        println!("criterion {n:>2} {mark}  {name}");
    } else {
        println!("criterion {n:>2} {mark}  {name} ({detail})");
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn quad(a: Rational, b: Rational) -> QuadExt {
    QuadExt::new(a, b, 2)
}

fn has_terms(b: &Branch, expected: &[(Rational, QuadExt)]) -> bool {
    expected.iter().all(|(e, c)| b.coeff(e).is_ok_and(|x| &x == c))
}

#[test]
fn criterion_01_diagonal_series() {
    let out = Command::new(env!("CARGO_BIN_EXE_hkdiag"))
        .args(["diag", "--paper-a348410", "--prec", "8", "--format", "csv"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let got: Vec<String> = text.lines().skip(1).map(|row| row.split(',').skip(1).collect::<Vec<_>>().join("/")).collect();
    let expected: Vec<String> = [1, 1, 5, 19, 85, 376, 1715, 7890].iter().map(|c| format!("{c}/1")).collect();
    let passed = out.status.success() && got == expected;
    report(1, "diag --paper-a348410 --prec 8 prints 1, 1, 5, 19, 85, 376, 1715, 7890", passed, "");

    let text_out = Command::new(env!("CARGO_BIN_EXE_hkdiag"))
        .args(["diag", "--paper-a348410", "--prec", "8"])
        .output()
        .unwrap();
    let text = String::from_utf8(text_out.stdout).unwrap();
    assert!(text.contains("g(z) = 1 + z + 5*z^2 + 19*z^3 + 85*z^4 + 376*z^5 + 1715*z^6 + 7890*z^7 + O(z^8)"));
    assert_eq!(got, expected);
    assert!(out.status.success());
}

#[test]
fn criterion_02_oracle_equivalence() {
    let f = a348410::bivariate();
    let g = diagonal_gf(&f, 41).unwrap();
    let mismatch = (0..=40).find(|&n| g.coeff(n).unwrap() != diagonal_oracle(&f, n as usize));
    report(2, "residue coefficients equal brute-force diagonal for n = 0..40", mismatch.is_none(), "");
    assert_eq!(mismatch, None);
}

#[test]
fn criterion_03_branch_s4() {
    let d = a348410::denominator();
    let short = hensel_lift(&d, &int(1), 8).unwrap();
    let long = hensel_lift(&d, &int(1), 40).unwrap();
    let expected = ints(&[1, 1, 3, 9, 32, 119, 466, 1881]);
    let terms_ok = short.prec() == 8 && short.coeff_range(0, 8).unwrap() == expected;
    let prefix_ok = long.coeff_range(0, 8).unwrap() == expected;
    let r = d.eval_series(&long);
    let residual_ok = long.prec() == 40 && r.valuation() >= 40;
    report(3, "s4 = 1 + z + 3z^2 + ... + 1881z^7; D(s4, z) = 0 mod z^40", terms_ok && prefix_ok && residual_ok, "");
    assert!(terms_ok && prefix_ok);
    assert!(residual_ok, "residual {r}");
}

#[test]
fn criterion_04_branch_s1() {
    let branches = expand_branch(&a348410::denominator(), &int(-1), 3).unwrap();
    let expected = [
        (int(-1), quad(int(-1), int(0))),
        (int(0), quad(rat(-1, 4), int(0))),
        (int(1), quad(rat(1, 8), int(0))),
        (int(2), quad(rat(-27, 256), int(0))),
    ];
    let s1: Vec<&Branch> = branches.iter().filter(|b| b.ramification == 1).collect();
    let passed = s1.len() == 1 && has_terms(s1[0], &expected);
    report(4, "s1 = -1/z - 1/4 + z/8 - (27/256)z^2", passed, "");
    assert_eq!(s1.len(), 1);
    assert!(has_terms(s1[0], &expected), "{}", s1[0].expansion);
}

#[test]
fn criterion_05_branches_s2_s3() {
    let d = a348410::denominator();
    let bs = all_branches(&d, 10).unwrap();
    let ramified: Vec<&Branch> = bs.iter().filter(|b| b.is_ramified()).collect();
    let leading = |sign: i64| {
        vec![
            (int(-1), quad(int(1), int(0))),
            (rat(-1, 2), quad(int(0), rat(sign, 2))),
            (int(0), quad(rat(-3, 8), int(0))),
            (rat(1, 2), quad(int(0), rat(37 * sign, 128))),
        ]
    };
    let shape = ramified.len() == 2
        && ramified.iter().all(|b| b.ramification == 2 && b.sqrt_d == Some(2) && b.valuation == Some(int(-1)));
    let ordered = shape && has_terms(ramified[0], &leading(1)) && has_terms(ramified[1], &leading(-1));
    let conjugate = shape && ramified[0].is_conjugate_of(ramified[1]);
    let residuals = bs.iter().all(|b| residual(&d, &b.expansion).is_zero());
    // the four roots of t^4 z^3 − t^3 z^2 − ... sum to z^2/z^3 = 1/z
    let one_over_z = PuiseuxSeries::from_laurent(Series::monomial(QuadExt::rational(int(1)), -1, 10));
    let sum = sum_expansions(&bs).unwrap();
    let root_sum = sum.prec() >= int(10) && sum.agrees_with(&one_over_z);
    report(
        5,
        "s2, s3 ramified over Q(sqrt 2), ordered conjugate pair; root sum 1/z to O(z^10)",
        ordered && conjugate && residuals && root_sum,
        "",
    );
    assert!(shape && ordered && conjugate && residuals && root_sum);
}

#[test]
fn criterion_06_quartic() {
    let g = diagonal_gf(&a348410::bivariate(), 40).unwrap();
    let p = a348410::quartic();
    let order = verify_algeq(&p, &g);
    let guessed = guess_algeq(&a348410::terms(40), 4, 2, DEFAULT_MARGIN).unwrap();
    let negated = hkdiag_core::guess::AlgebraicEquation::new(
        p.grid().iter().map(|row| row.iter().map(|c| -c).collect()).collect(),
    );
    let same = guessed.relation == p && negated == p;
    report(6, "quartic residual valuation >= 40; guessed from 40 terms in canonical form", order >= 40 && same, &format!("valuation {order}"));
    assert!(order >= 40);
    assert_eq!(guessed.relation, p);
    assert_eq!(negated, p);
}

#[test]
fn criterion_07_recurrence() {
    let a = a348410::terms(60);
    let r = a348410::recurrence();
    let first_failure = verify_rec(&r, &a);
    let guessed = guess_rec(&a, 4, 3, DEFAULT_MARGIN);
    let guess_ok = guessed.as_ref().is_ok_and(|g| verify_rec(&g.relation, &a).is_none());
    let detail = match first_failure {
        Some(m) => format!("known recurrence fails at m = {m} with residual {}; guess: {:?}", r.apply_at(&a, m), guessed.as_ref().err()),
        None => String::new(),
    };
    report(7, "order-4 recurrence annihilates 60 coefficients; guess_rec(4, 3) finds one", first_failure.is_none() && guess_ok, &detail);
    assert_eq!(first_failure, None);
    assert!(guess_ok);
}

#[test]
fn criterion_08_closed_forms() {
    let r = a348410::closed_form_check(40).unwrap();
    let passed = r.all_equal && r.derivative_identity && r.checked_order >= 40;
    report(8, "three forms of g agree to O(z^40); derivative factorization holds", passed, "");
    assert!(passed, "{r:?}");
}

#[test]
fn criterion_09_harmonic_identity() {
    let mut equal = 0;
    for m in 1..=6 {
        for n in 1..=40 {
            let r = harmonic_identity_check(m, n).unwrap();
            assert_eq!(r.equal, r.lhs == r.rhs);
            equal += usize::from(r.equal);
        }
    }
    report(9, "harmonic identity for m = 1..6, n = 1..40", equal == 240, &format!("{equal} of 240"));
    assert_eq!(equal, 240);
}

#[test]
fn criterion_10_series_identities() {
    let gkp = (1..=5).all(|m| gkp561_check(m, 30).unwrap().equal);
    let log = (1..=5).all(|m| log_identity_check(m, 20).unwrap().all_equal());
    let gf = harmonic_gf_check(2, 31).unwrap();
    let h = gf.harmonic_numbers.coeff_range(0, 31).unwrap();
    let mut partial = int(0);
    let mut running = vec![int(0)];
    for n in 1..=30 {
        partial += rat(1, n);
        running.push(partial.clone());
    }
    let gf_ok = gf.equal && h == running;
    report(
        10,
        "binomial sum to O(u^30), log identity to O(w^20), harmonic gf matches H_n for n <= 30",
        gkp && log && gf_ok,
        "",
    );
    assert!(gkp && log && gf_ok);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn series() -> impl Strategy<Value = Series<Rational>> {
    (-2i64..=2, prop::collection::vec(small_rational(), 0..6), 0i64..3)
        .prop_map(|(start, c, extra)| Series::new(start, c.clone(), start + c.len() as i64 + extra))
}

fn unit_series() -> impl Strategy<Value = Series<Rational>> {
    ((1i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d)), series())
        .prop_map(|(lead, s)| s.add(&Series::monomial(lead, s.valuation().min(s.prec()) - 1, s.prec())))
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() })
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

#[test]
fn criterion_11_properties() {
    let ring = run((series(), series(), series()), |(a, b, c)| {
        prop_assert!(a.add(&b).add(&c).agrees_with(&a.add(&b.add(&c))));
        prop_assert!(a.add(&b).agrees_with(&b.add(&a)));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        Ok(())
    });
    let division = run((series(), unit_series()), |(a, u)| {
        let q = a.div(&u).unwrap();
        prop_assert!(q.mul(&u).agrees_with(&a));
        Ok(())
    });
    // D = (t − t0)(c + t) + z·r(t, z)
    let problem = (small_rational(), 1i64..=4, prop::collection::vec(-3i64..=3, 6), 1i64..12);
    let hensel = run(problem, |(t0, c, r, prec)| {
        let lin = Bipoly::new(vec![vec![-t0.clone()], vec![Rational::one()]]);
        let q = Bipoly::new(vec![vec![int(c) - &t0 + int(1)], vec![Rational::one()]]);
        let zr = Bipoly::from_int_terms(&[(0, 1, r[0]), (0, 2, r[1]), (1, 1, r[2]), (1, 2, r[3]), (2, 1, r[4]), (2, 3, r[5])]);
        let d = lin.mul(&q).add(&zr);
        let s = hensel_lift(&d, &t0, prec).unwrap();
        prop_assert!(d.eval_series(&s).valuation() >= prec);
        Ok(())
    });
    let guesser = run(prop::collection::vec(small_rational(), 30), |a| {
        if let Ok(found) = guess_rec(&a, 2, 1, DEFAULT_MARGIN) {
            prop_assert_eq!(verify_rec(&found.relation, &a), None);
        }
        if let Ok(found) = guess_algeq(&a, 2, 2, DEFAULT_MARGIN) {
            prop_assert!(verify_algeq(&found.relation, &Series::from_coefficients(&a)) >= a.len() as i64);
        }
        Ok(())
    });
    let results = [("ring axioms", &ring), ("division round trip", &division), ("Hensel residual", &hensel), ("guesser soundness", &guesser)];
    let failed: Vec<String> =
        results.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    report(11, "property suites, 256 cases each", failed.is_empty(), &failed.join("; "));
    assert!(failed.is_empty(), "{failed:?}");
}
