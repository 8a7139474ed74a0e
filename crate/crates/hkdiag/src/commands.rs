use std::fmt::Write as _;

use hkdiag_core::a348410;
use hkdiag_core::branch::{all_branches, residual, sum_expansions};
use hkdiag_core::diagonal::{diagonal_oracle_terms, residue_sum, substitute_diagonal, RationalBivariate};
use hkdiag_core::guess::{guess_algeq, guess_rec_from, verify_algeq, verify_rec_from, Recurrence};
use hkdiag_core::harmonic::{gbs_series, gkp561_check, harmonic_gf_check, harmonic_identity_check, log_identity_check, Report};
use hkdiag_core::poly::{Bipoly, Named};
use hkdiag_core::puiseux::PuiseuxSeries;
use hkdiag_core::scalar::common_denominator;
use hkdiag_core::{Error as CoreError, QuadExt, Rational, Series};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cli::{BranchesArgs, Cli, Command, DataArgs, Format, FunctionArgs, GuessAlgeqArgs, GuessRecArgs, HarmonicArgs, VerifyRecArgs};
use crate::coeffs::read_coefficients;
use crate::error::CliError;
use crate::reproduce;
use crate::parse::{parse_poly, parse_tz, parse_xy};
use crate::render;

/// A command result in every output form it supports.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    /// Whatever the command verifies held.
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Diag(a) => diag(&function(a)?, cli.prec),
        Command::Branches(a) => branches(a, cli.prec),
        Command::GuessAlgeq(a) => guess_equation(a),
        Command::GuessRec(a) => guess_recurrence(a),
        Command::VerifyRec(a) => verify_recurrence(a),
        Command::Gbs(a) => gbs(a.m, cli.prec),
        Command::Harmonic(a) => harmonic(a, cli.prec),
        Command::CheckAll => Ok(check_all()),
    }
}

pub fn render(r: &Rendered, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(r.text.clone()),
        Format::Json => Ok(serde_json::to_string_pretty(&r.json).expect("json values serialize") + "\n"),
        Format::Csv => r.csv.clone().ok_or_else(|| CliError::Usage("this command has no CSV output".into())),
    }
}

fn function(a: &FunctionArgs) -> Result<RationalBivariate, CliError> {
    if a.paper_a348410 {
        return Ok(a348410::bivariate());
    }
    let den = a.den.as_deref().ok_or_else(|| CliError::Usage("--den is required unless --paper-a348410 is given".into()))?;
    let num = parse_xy(a.num.as_deref().unwrap_or("1"))?;
    Ok(RationalBivariate::new(num, parse_xy(den)?)?)
}

fn named<'a>(p: &'a Bipoly) -> Named<'a> {
    Named { poly: p, outer: "t", inner: "z" }
}

pub fn diag(f: &RationalBivariate, prec: i64) -> Result<Rendered, CliError> {
    let problem = substitute_diagonal(f);
    let (g, classes) = residue_sum(&problem, prec)?;
    let oracle = diagonal_oracle_terms(f, prec as usize);
    let mismatch = (0..prec).find(|&n| g.coeff(n).ok().as_ref() != Some(&oracle[n as usize]));

    let mut text = String::new();
    writeln!(text, "D(t, z) = {}", named(&problem.denominator)).unwrap();
    writeln!(text, "N(t, z) = {}", named(&problem.numerator)).unwrap();
    if problem.z_power != 0 {
        writeln!(text, "prefactor z^{}", problem.z_power).unwrap();
    }
    writeln!(text, "bounded branches: {}", classes.bounded.len()).unwrap();
    for b in &classes.bounded {
        writeln!(text, "  t = {}", b.expansion).unwrap();
    }
    let unbounded: Vec<String> =
        classes.unbounded.iter().map(|(q, n)| format!("{n} of valuation {q}")).collect();
    let unbounded = if unbounded.is_empty() { "none".to_string() } else { unbounded.join(", ") };
    writeln!(text, "unbounded branches: {unbounded}").unwrap();
    writeln!(text, "g(z) = {g}").unwrap();
    match mismatch {
        None => writeln!(text, "direct expansion: all {prec} coefficients agree").unwrap(),
        Some(n) => writeln!(
            text,
            "direct expansion: MISMATCH at z^{n} (residues {}, expansion {})",
            g.coeff(n).map(|c| c.to_string()).unwrap_or_default(),
            oracle[n as usize]
        )
        .unwrap(),
    }

    let json = json!({
        "problem": {
            "numerator": named(&problem.numerator).to_string(),
            "denominator": named(&problem.denominator).to_string(),
            "z_power": problem.z_power,
        },
        "bounded": classes.bounded.iter().map(|b| json!({
            "t0": render::rational(&b.t0),
            "expansion": render::series(&b.expansion),
        })).collect::<Vec<_>>(),
        "unbounded": classes.unbounded.iter().map(|(q, n)| json!({"valuation": q.to_string(), "count": n})).collect::<Vec<_>>(),
        "series": render::series(&g),
        "oracle": {"checked": prec, "match": mismatch.is_none(), "first_mismatch": mismatch},
    });
    Ok(Rendered { text, json, csv: Some(render::series_csv(&g)), passed: mismatch.is_none() })
}

pub fn branches(a: &BranchesArgs, prec: i64) -> Result<Rendered, CliError> {
    let d = match &a.tz {
        Some(src) => parse_tz(src)?,
        None => substitute_diagonal(&function(&a.function)?).denominator,
    };
    let Some(n) = d.degree().filter(|&n| n >= 1) else {
        return Err(CliError::Usage("D(t, z) must have positive degree in t".into()));
    };
    let bs = all_branches(&d, prec)?;

    // Σ roots = −[t^(n−1)]D / [t^n]D
    let bound = prec + 2 * (d.inner_degree() as i64 + 1);
    let top = Series::from_poly(d.row(n).to_vec(), bound);
    let next = Series::from_poly(d.row(n - 1).to_vec(), bound);
    let expected = PuiseuxSeries::from_laurent(next.neg().div(&top)?.map(|c| QuadExt::rational(c.clone())));
    let sum = sum_expansions(&bs);
    let root_sum = sum.as_ref().is_some_and(|s| s.agrees_with(&expected));

    let mut text = String::new();
    writeln!(text, "D(t, z) = {}", named(&d)).unwrap();
    let mut entries = Vec::new();
    let mut all_zero = true;
    for (k, b) in bs.iter().enumerate() {
        let zero = residual(&d, &b.expansion).is_zero();
        all_zero &= zero;
        let valuation = b.valuation.as_ref().map_or("t = 0 exactly".to_string(), |q| format!("valuation {q}"));
        let field = b.sqrt_d.map_or(String::new(), |d| format!(", over Q(sqrt({d}))"));
        let kind = if b.bounded { "bounded" } else { "unbounded" };
        writeln!(text, "branch {}: {valuation}, ramification {}, {kind}{field}", k + 1, b.ramification).unwrap();
        writeln!(text, "  t = {}", b.expansion).unwrap();
        writeln!(text, "  D(t, z) = {}", if zero { "0 to this precision" } else { "NONZERO" }).unwrap();
        let mut entry = render::branch(b);
        entry["residual_zero"] = json!(zero);
        entries.push(entry);
    }
    writeln!(text, "sum of roots: {}", if root_sum { "matches coefficients of D" } else { "MISMATCH" }).unwrap();

    let json = json!({
        "denominator": named(&d).to_string(),
        "branches": entries,
        "root_sum": {
            "sum": sum.as_ref().map(|s| render::puiseux(s, bs.iter().any(|b| b.sqrt_d.is_some()))),
            "match": root_sum,
        },
    });
    Ok(Rendered { text, json, csv: None, passed: all_zero && root_sum })
}

fn data(a: &DataArgs) -> Result<Vec<Rational>, CliError> {
    let mut values = if a.paper_a348410 {
        a348410::terms(a.count.unwrap_or(60))
    } else if let Some(path) = &a.input {
        read_coefficients(path)?
    } else {
        return Err(CliError::Usage("give --input FILE or --paper-a348410".into()));
    };
    if let Some(n) = a.count {
        if n > values.len() {
            return Err(CoreError::InsufficientData { needed: n, got: values.len() }.into());
        }
        values.truncate(n);
    }
    Ok(values)
}

pub fn guess_equation(a: &GuessAlgeqArgs) -> Result<Rendered, CliError> {
    let c = data(&a.data)?;
    let found = guess_algeq(&c, a.deg_g, a.deg_z, a.margin)?;
    let order = verify_algeq(&found.relation, &Series::from_coefficients(&c));
    let mut text = format!("{}\nverified to O(z^{})\n", found.relation, c.len());
    if found.is_ambiguous() {
        writeln!(
            text,
            "note: {} independent relations fit; shown is the one with the most trailing zero coefficients",
            found.kernel_dimension
        )
        .unwrap();
    }
    let json = json!({
        "equation": render::equation(&found.relation),
        "kernel_dimension": found.kernel_dimension,
        "residual_valuation": order,
        "coefficients_used": c.len(),
    });
    Ok(Rendered { text, json, csv: None, passed: true })
}

pub fn guess_recurrence(a: &GuessRecArgs) -> Result<Rendered, CliError> {
    let c = data(&a.data)?;
    let found = guess_rec_from(&c, a.order, a.deg, a.margin, a.from)?;
    let last = c.len() - found.relation.order() - 1;
    let mut text = format!("{}\nholds for m = {}..{last}\n", found.relation, a.from);
    if found.is_ambiguous() {
        writeln!(text, "note: {} independent relations fit", found.kernel_dimension).unwrap();
    }
    let json = json!({
        "recurrence": render::recurrence(&found.relation),
        "kernel_dimension": found.kernel_dimension,
        "from": a.from,
        "coefficients_used": c.len(),
    });
    Ok(Rendered { text, json, csv: None, passed: true })
}

/// `p0;p1;...;pr` as polynomials in `m`, scaled to integer coefficients.
pub fn parse_recurrence(src: &str) -> Result<Recurrence, CliError> {
    let polys = src
        .split(';')
        .map(|p| parse_poly(p, &["m"]).map(|p| p.to_dense()))
        .collect::<Result<Vec<_>, _>>()?;
    let den = Rational::from_integer(common_denominator(polys.iter().flatten()));
    let ints: Vec<Vec<BigInt>> =
        polys.iter().map(|p| p.iter().map(|c| (c * &den).to_integer()).collect()).collect();
    Ok(Recurrence::new(ints)?)
}

pub fn verify_recurrence(a: &VerifyRecArgs) -> Result<Rendered, CliError> {
    let r = match (&a.rec, a.known_recurrence) {
        (Some(src), _) => parse_recurrence(src)?,
        (None, true) => a348410::recurrence(),
        (None, false) => return Err(CliError::Usage("give --rec or --known-recurrence".into())),
    };
    let c = data(&a.data)?;
    if c.len() < a.from + r.order() + 1 {
        return Err(CoreError::InsufficientData { needed: a.from + r.order() + 1, got: c.len() }.into());
    }
    let last = c.len() - r.order() - 1;
    let failure = verify_rec_from(&r, &c, a.from);
    let residual = failure.map(|m| r.apply_at(&c, m));
    let mut text = format!("{r}\n");
    match (&failure, &residual) {
        (Some(m), Some(v)) => writeln!(text, "fails first at m = {m} (residual {v})").unwrap(),
        _ => writeln!(text, "holds for every window m = {}..{last}", a.from).unwrap(),
    }
    let json = json!({
        "recurrence": render::recurrence(&r),
        "from": a.from,
        "last_window": last,
        "first_failure": failure,
        "residual": residual.as_ref().map(render::rational),
    });
    Ok(Rendered { text, json, csv: None, passed: failure.is_none() })
}

pub fn gbs(m: i64, prec: i64) -> Result<Rendered, CliError> {
    let b = gbs_series(m, prec)?;
    let zero = b.residual()?.is_zero();
    let text = format!(
        "B(u) = {}\nB - 1 - u*B^{m}: {}\n",
        b.series.in_var("u"),
        if zero { "zero to this precision" } else { "NONZERO" }
    );
    let json = json!({"m": m, "series": render::series(&b.series), "residual_zero": zero});
    Ok(Rendered { text, json, csv: Some(render::series_csv(&b.series)), passed: zero })
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(src: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Usage(format!("bad range '{src}' (expected a..b or a single integer)"));
    let (lo, hi) = match src.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v: i64 = src.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty range '{src}'")));
    }
    Ok((lo..=hi).collect())
}

fn series_report_json(r: &Report<Series<Rational>>) -> Value {
    json!({
        "lhs": render::series(&r.lhs),
        "rhs": render::series(&r.rhs),
        "equal": r.equal,
        "params": {"m": r.params.m, "n": r.params.n, "prec": r.params.prec},
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "equal"
    } else {
        "DIFFERENT"
    }
}

pub fn harmonic(a: &HarmonicArgs, prec: i64) -> Result<Rendered, CliError> {
    let ms = parse_range(&a.m)?;
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut csv = String::new();
    let mut passed = true;

    if a.gkp || a.log || a.gf {
        csv.push_str("m,prec,equal\n");
    }
    if a.gkp {
        for &m in &ms {
            let r = gkp561_check(m, prec)?;
            writeln!(text, "m = {m}\n  sum C(mk,k) u^k = {}\n  1/(1-m+m/B)     = {}\n  {}", r.lhs.in_var("u"), r.rhs.in_var("u"), verdict(r.equal)).unwrap();
            writeln!(csv, "{m},{prec},{}", r.equal).unwrap();
            passed &= r.equal;
            reports.push(series_report_json(&r));
        }
    } else if a.log {
        for &m in &ms {
            let r = log_identity_check(m, prec)?;
            writeln!(text, "m = {m}").unwrap();
            for (name, layer) in [("log", &r.log), ("differentiated", &r.differentiated), ("multiplied", &r.multiplied)] {
                writeln!(text, "  {name}: {} = {}  {}", layer.lhs.in_var("w"), layer.rhs.in_var("w"), verdict(layer.equal)).unwrap();
            }
            writeln!(csv, "{m},{prec},{}", r.all_equal()).unwrap();
            passed &= r.all_equal();
            reports.push(json!({
                "log": series_report_json(&r.log),
                "differentiated": series_report_json(&r.differentiated),
                "multiplied": series_report_json(&r.multiplied),
                "equal": r.all_equal(),
            }));
        }
    } else if a.gf {
        for &m in &ms {
            let r = harmonic_gf_check(m, prec)?;
            writeln!(text, "m = {m}\n  double sum  = {}\n  closed form = {}\n  {}", r.double_sum, r.closed_form, verdict(r.equal)).unwrap();
            writeln!(csv, "{m},{prec},{}", r.equal).unwrap();
            passed &= r.equal;
            reports.push(json!({
                "lhs": render::series(&r.double_sum),
                "rhs": render::series(&r.closed_form),
                "harmonic_numbers": render::series(&r.harmonic_numbers),
                "equal": r.equal,
                "params": {"m": m, "n": null, "prec": prec},
            }));
        }
    } else {
        let ns = parse_range(&a.n)?;
        csv.push_str("m,n,lhs,rhs,equal\n");
        let mut count = 0;
        for &m in &ms {
            for &n in &ns {
                let n = u64::try_from(n).map_err(|_| CliError::Usage("n must be positive".into()))?;
                let r = harmonic_identity_check(m, n)?;
                writeln!(text, "m = {m}, n = {n}: H_n = {}, rhs = {}, {}", r.lhs, r.rhs, verdict(r.equal)).unwrap();
                writeln!(csv, "{m},{n},{},{},{}", r.lhs, r.rhs, r.equal).unwrap();
                passed &= r.equal;
                count += usize::from(r.equal);
                reports.push(json!({
                    "lhs": render::rational(&r.lhs),
                    "rhs": render::rational(&r.rhs),
                    "equal": r.equal,
                    "params": {"m": m, "n": n, "prec": null},
                }));
            }
        }
        writeln!(text, "{count} of {} identities hold", reports.len()).unwrap();
    }
    Ok(Rendered { text, json: Value::Array(reports), csv: Some(csv), passed })
}

pub fn check_all() -> Rendered {
    let checks = reproduce::checks();
    let mut text = String::new();
    let mut csv = String::from("check,passed,detail\n");
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(text, "{mark}  {}", c.label).unwrap();
        } else {
            writeln!(text, "{mark}  {} ({})", c.label, c.detail).unwrap();
        }
        writeln!(csv, "\"{}\",{},\"{}\"", c.label, c.passed, c.detail).unwrap();
    }
    let passed = checks.iter().all(|c| c.passed);
    let json = Value::Array(
        checks.iter().map(|c| json!({"check": c.label, "passed": c.passed, "detail": c.detail})).collect(),
    );
    Rendered { text, json, csv: Some(csv), passed }
}
