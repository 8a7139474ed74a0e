//! JSON and CSV encodings. Big integers are always decimal strings.

use hkdiag_core::branch::Branch;
use hkdiag_core::guess::{AlgebraicEquation, Recurrence};
use hkdiag_core::puiseux::PuiseuxSeries;
use hkdiag_core::{QuadExt, Rational, Series};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn rational(q: &Rational) -> Value {
    json!([q.numer().to_string(), q.denom().to_string()])
}

fn integers(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// `{valuation, ramification, coeffs, prec}`; `coeffs[k]` belongs to `z^(valuation + k)`.
pub fn series(s: &Series<Rational>) -> Value {
    json!({
        "valuation": s.valuation(),
        "ramification": 1,
        "coeffs": s.coeffs().iter().map(rational).collect::<Vec<_>>(),
        "prec": s.prec(),
    })
}

/// Exponents are `(valuation + k) / ramification`. Coefficients in `Q(√d)` are
/// `[rational part, coefficient of √d]` pairs of fractions.
pub fn puiseux(s: &PuiseuxSeries<QuadExt>, quadratic: bool) -> Value {
    let coeff = |c: &QuadExt| if quadratic { json!([rational(c.a()), rational(c.b())]) } else { rational(c.a()) };
    json!({
        "valuation": s.body().valuation(),
        "ramification": s.ramification(),
        "coeffs": s.body().coeffs().iter().map(coeff).collect::<Vec<_>>(),
        "prec": s.body().prec(),
    })
}

pub fn branch(b: &Branch) -> Value {
    let mut out = json!({
        "valuation": b.valuation.as_ref().map(|q| q.to_string()),
        "ramification": b.ramification,
        "bounded": b.bounded,
        "expansion": puiseux(&b.expansion, b.sqrt_d.is_some()),
    });
    if let Some(d) = b.sqrt_d {
        out["sqrt_d"] = json!(d);
    }
    out
}

/// Rows indexed by the power of `g`, columns by the power of `z`.
pub fn equation(p: &AlgebraicEquation) -> Value {
    json!({
        "grid": p.grid().iter().map(|r| integers(r)).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

/// `coeff_polys[i][d]` multiplies `m^d · a(m+i)`.
pub fn recurrence(r: &Recurrence) -> Value {
    json!({
        "order": r.order(),
        "coeff_polys": r.coeff_polys().iter().map(|p| integers(p)).collect::<Vec<_>>(),
        "text": r.to_string(),
    })
}

/// `exponent,numerator,denominator`, one row per known coefficient from `min(0, valuation)`.
pub fn series_csv(s: &Series<Rational>) -> String {
    let mut out = String::from("exponent,numerator,denominator\n");
    for e in s.valuation().min(0)..s.prec() {
        let c = s.coeff(e).expect("exponent below precision");
        out.push_str(&format!("{e},{},{}\n", c.numer(), c.denom()));
    }
    out
}
