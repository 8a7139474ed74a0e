//! Reference values for the built-in instance, checked one by one.

use hkdiag_core::a348410;
use hkdiag_core::branch::{all_branches, hensel_lift, residual, sum_expansions, Branch};
use hkdiag_core::diagonal::diagonal_gf;
use hkdiag_core::guess::{guess_algeq, guess_rec_from, verify_algeq, verify_rec_from, DEFAULT_MARGIN};
use hkdiag_core::harmonic::{gkp561_check, harmonic_gf_check, harmonic_identity_check, log_identity_check};
use hkdiag_core::puiseux::PuiseuxSeries;
use hkdiag_core::scalar::{int, rat};
use hkdiag_core::{QuadExt, Rational, Series};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

fn check(label: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { label: label.to_string(), passed, detail: detail.into() }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn quad(a: Rational, b: Rational) -> QuadExt {
    QuadExt::new(a, b, 2)
}

fn coeffs_match(b: &Branch, expected: &[(Rational, QuadExt)]) -> bool {
    expected.iter().all(|(e, c)| b.coeff(e).is_ok_and(|x| &x == c))
}

pub fn diagonal_series() -> Check {
    let expected = ints(&[1, 1, 5, 19, 85, 376, 1715, 7890]);
    let got = diagonal_gf(&a348410::bivariate(), 8).and_then(|g| g.coeff_range(0, 8));
    let passed = got.is_ok_and(|c| c == expected);
    check("diagonal series 1, 1, 5, 19, 85, 376, 1715, 7890", passed, "")
}

pub fn oracle_equivalence() -> Check {
    let oracle = a348410::terms(41);
    let g = diagonal_gf(&a348410::bivariate(), 41).and_then(|g| g.coeff_range(0, 41));
    let passed = g.is_ok_and(|c| c == oracle);
    check("residues equal direct expansion, n = 0..40", passed, "")
}

pub fn bounded_branch() -> Check {
    let d = a348410::denominator();
    let passed = hensel_lift(&d, &int(1), 40).is_ok_and(|s| {
        s.coeff_range(0, 8).is_ok_and(|c| c == ints(&[1, 1, 3, 9, 32, 119, 466, 1881]))
            && d.eval_series(&s).valuation() >= 40
    });
    check("bounded branch s4, residual zero to O(z^40)", passed, "")
}

fn instance_branches(prec: i64) -> Option<Vec<Branch>> {
    all_branches(&a348410::denominator(), prec).ok()
}

pub fn branch_s1() -> Check {
    let passed = instance_branches(3).is_some_and(|bs| {
        bs.iter().any(|b| {
            b.ramification == 1
                && b.valuation == Some(int(-1))
                && coeffs_match(
                    b,
                    &[
                        (int(-1), quad(int(-1), int(0))),
                        (int(0), quad(rat(-1, 4), int(0))),
                        (int(1), quad(rat(1, 8), int(0))),
                        (int(2), quad(rat(-27, 256), int(0))),
                    ],
                )
        })
    });
    check("unbounded branch s1 = -1/z - 1/4 + z/8 - 27/256 z^2", passed, "")
}

pub fn branches_s2_s3() -> Check {
    let Some(bs) = instance_branches(10) else {
        return check("ramified pair s2, s3 over Q(sqrt 2)", false, "expansion failed");
    };
    let ramified: Vec<&Branch> = bs.iter().filter(|b| b.is_ramified()).collect();
    let shape = ramified.len() == 2
        && ramified.iter().all(|b| b.ramification == 2 && b.sqrt_d == Some(2) && b.valuation == Some(int(-1)));
    let leading = |sign: i64| {
        vec![
            (int(-1), quad(int(1), int(0))),
            (rat(-1, 2), quad(int(0), rat(sign, 2))),
            (int(0), quad(rat(-3, 8), int(0))),
            (rat(1, 2), quad(int(0), rat(37 * sign, 128))),
        ]
    };
    let terms = shape && coeffs_match(ramified[0], &leading(1)) && coeffs_match(ramified[1], &leading(-1));
    let pair = shape && ramified[0].is_conjugate_of(ramified[1]);
    let residuals = bs.iter().all(|b| residual(&a348410::denominator(), &b.expansion).is_zero());
    let one_over_z = PuiseuxSeries::from_laurent(Series::monomial(QuadExt::rational(int(1)), -1, 10));
    let root_sum = sum_expansions(&bs).is_some_and(|s| s.prec() >= int(10) && s.agrees_with(&one_over_z));
    check(
        "ramified pair s2, s3 over Q(sqrt 2); root sum 1/z to O(z^10)",
        terms && pair && residuals && root_sum,
        format!("terms {terms}, conjugate {pair}, residuals {residuals}, root sum {root_sum}"),
    )
}

pub fn quartic() -> Check {
    let g = diagonal_gf(&a348410::bivariate(), 40);
    let residual_ok = g.as_ref().is_ok_and(|g| verify_algeq(&a348410::quartic(), g) >= 40);
    let guessed = guess_algeq(&a348410::terms(40), 4, 2, DEFAULT_MARGIN);
    let guess_ok = guessed.is_ok_and(|found| found.relation == a348410::quartic());
    check(
        "quartic annihilates g to O(z^40); guessed from 40 terms",
        residual_ok && guess_ok,
        format!("residual {residual_ok}, guess {guess_ok}"),
    )
}

/// The known recurrence is checked from `m = 1`; at `m = 0` it leaves a
/// nonzero residual, reported in the detail.
pub fn recurrence() -> Check {
    let a = a348410::terms(60);
    let r = a348410::recurrence();
    let from_one = verify_rec_from(&r, &a, 1).is_none();
    let guessed = guess_rec_from(&a, 4, 3, DEFAULT_MARGIN, 1).is_ok_and(|g| g.relation == r);
    check(
        "order-4 recurrence holds for m = 1..55 on 60 terms; the same one is guessed",
        from_one && guessed,
        format!("verified {from_one}, guessed {guessed}, residual at m = 0: {}", r.apply_at(&a, 0)),
    )
}

pub fn closed_forms() -> Check {
    let passed = a348410::closed_form_check(40).is_ok_and(|r| r.all_equal && r.derivative_identity);
    check("closed forms and derivative factorization agree to O(z^40)", passed, "")
}

pub fn harmonic_grid() -> Check {
    let mut failures = 0;
    for m in 1..=6 {
        for n in 1..=40 {
            if !harmonic_identity_check(m, n).is_ok_and(|r| r.equal) {
                failures += 1;
            }
        }
    }
    check("harmonic identity for m = 1..6, n = 1..40", failures == 0, format!("{failures} failures"))
}

pub fn series_identities() -> Check {
    let gkp = (1..=5).all(|m| gkp561_check(m, 30).is_ok_and(|r| r.equal));
    let log = (1..=5).all(|m| log_identity_check(m, 20).is_ok_and(|r| r.all_equal()));
    let gf = harmonic_gf_check(2, 31).is_ok_and(|r| r.equal);
    check(
        "binomial sum via B to O(u^30); log identity to O(w^20); harmonic gf to n = 30",
        gkp && log && gf,
        format!("binomial sum {gkp}, log {log}, gf {gf}"),
    )
}

pub fn checks() -> Vec<Check> {
    vec![
        diagonal_series(),
        oracle_equivalence(),
        bounded_branch(),
        branch_s1(),
        branches_s2_s3(),
        quartic(),
        recurrence(),
        closed_forms(),
        harmonic_grid(),
        series_identities(),
    ]
}
