//! Root branches `t = s(z)` of a polynomial `D(t, z)` near `z = 0`.
//!
//! Valuations come from the Newton polygon of `D`: hull points are
//! `(t-degree i, z-valuation of the coefficient of t^i)`, and a hull segment
//! of slope `σ` and width `ℓ` carries `ℓ` roots of valuation `q = −σ`. For
//! `D = −1 + t − z t² − z² t³ + z³ t⁴` the points are
//! `(0,0) (1,0) (2,1) (3,2) (4,3)`, giving one root of valuation `0` and
//! three of valuation `−1`.
//!
//! Simple roots are lifted by Newton iteration over truncated series. A
//! double root of a leading equation is resolved by one recentering step,
//! which may introduce ramification 2 and a single quadratic extension.
//! Anything deeper is reported as [`Error::UnsupportedRamification`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{rational_roots, Bipoly, PolyInTOverZ};
use crate::puiseux::PuiseuxSeries;
use crate::scalar::{sqrt_rational, Field, QuadExt, Rational};
use crate::series::Series;

/// Extra terms carried while lifting a recentered or rescaled root.
const LIFT_MARGIN: i64 = 2;

/// One root `t = s(z)` of `D(t, z) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    /// Leading exponent of `s`; `None` for the root `t = 0` exactly.
    pub valuation: Option<Rational>,
    pub ramification: u32,
    /// `valuation >= 0`, i.e. the branch stays bounded as `z → 0`.
    pub bounded: bool,
    /// Radicand of the quadratic extension the coefficients live in, if any.
    pub sqrt_d: Option<u64>,
    pub expansion: PuiseuxSeries<QuadExt>,
    /// Multiplicity of the leading coefficient as a root of the leading equation.
    pub multiplicity_at_leading_order: usize,
    /// Coefficient of `z^valuation`.
    pub leading: QuadExt,
}

/// A bounded branch with rational coefficients, as used by the residue sum.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedBranch {
    /// `s(0)`.
    pub t0: Rational,
    pub valuation: Option<Rational>,
    pub expansion: Series<Rational>,
}

impl BoundedBranch {
    pub fn to_branch(&self) -> Branch {
        let leading = match &self.valuation {
            Some(_) if !self.expansion.is_zero() => self.expansion.coeffs()[0].clone(),
            _ => Rational::zero(),
        };
        Branch {
            valuation: self.valuation.clone(),
            ramification: 1,
            bounded: true,
            sqrt_d: None,
            expansion: PuiseuxSeries::from_laurent(self.expansion.map(QuadExt::from_rational)),
            multiplicity_at_leading_order: 1,
            leading: QuadExt::rational(leading),
        }
    }
}

/// Bounded branches in full plus a summary of the unbounded ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    /// Sorted by `t0`.
    pub bounded: Vec<BoundedBranch>,
    /// `(valuation, count)` for every negative-valuation hull segment.
    pub unbounded: Vec<(Rational, usize)>,
}

/// Valuations and root counts read off the lower convex hull.
///
/// Segments come left to right, so valuations are decreasing. Roots equal to
/// zero (a factor `t^k` of `D`) are not reported.
pub fn newton_polygon(d: &PolyInTOverZ) -> Vec<(Rational, usize)> {
    let points: Vec<(i64, i64)> = (0..d.rows().len())
        .filter_map(|i| d.row_valuation(i).map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (-Rational::new(BigInt::from(dy), BigInt::from(dx)), dx as usize)
        })
        .collect()
}

fn eval_at_zero<F: Field>(p: &Bipoly, x: &F) -> F {
    p.at_inner_zero()
        .iter()
        .rev()
        .fold(F::zero(), |acc, c| acc * x.clone() + F::from_rational(c))
}

/// Newton iteration for the power-series root of `p(t, w)` through `t(0) = root`.
fn newton_lift<F: Field>(p: &Bipoly, root: F, prec: i64) -> Result<Series<F>> {
    if prec < 1 {
        return Err(Error::InvalidArgument("lifting precision must be at least 1"));
    }
    let dp = p.derivative();
    if !eval_at_zero(p, &root).is_zero() || eval_at_zero(&dp, &root).is_zero() {
        return Err(Error::NotASimpleRoot);
    }
    let mut s = Series::constant(root, 1);
    let mut cur = 1;
    while cur < prec {
        cur = (2 * cur).min(prec);
        let padded = s.with_prec_padded(cur);
        let f = p.eval_series(&padded);
        let fp = dp.eval_series(&padded);
        s = padded.sub(&f.div(&fp)?).truncate(cur);
    }
    Ok(s)
}

/// The power-series root of `D` with `s(0) = t0`, known mod `z^prec`.
pub fn hensel_lift(d: &PolyInTOverZ, t0: &Rational, prec: i64) -> Result<Series<Rational>> {
    newton_lift(d, t0.clone(), prec)
}

/// `t = w^outer · (center + w^inner · ν(w))` with `z = w^ramification`.
struct Chart {
    ramification: u32,
    outer: i64,
    center: Rational,
    inner: i64,
    multiplicity: usize,
}

impl Chart {
    fn lift(&self, eq: &Bipoly, root: QuadExt, valuation: &Rational, prec: i64) -> Result<Branch> {
        let body_prec = self.ramification as i64 * prec;
        let nu_prec = (body_prec - self.outer - self.inner + LIFT_MARGIN).max(1);
        let nu = newton_lift(eq, root.clone(), nu_prec)?;
        let shifted = nu.shift(self.inner);
        let centered = shifted.add(&Series::constant(QuadExt::rational(self.center.clone()), shifted.prec()));
        let body = centered.shift(self.outer).truncate(body_prec);
        let expansion = PuiseuxSeries::new(self.ramification, body);
        let sqrt_d = root.radicand();
        let leading = if self.multiplicity == 1 { root } else { QuadExt::rational(self.center.clone()) };
        Ok(Branch {
            valuation: Some(valuation.clone()),
            ramification: expansion.ramification(),
            bounded: !valuation.is_negative(),
            sqrt_d,
            expansion,
            multiplicity_at_leading_order: self.multiplicity,
            leading,
        })
    }
}

fn split(q: &Rational) -> (i64, u32) {
    let a = q.numer().to_i64().expect("valuation numerator out of range");
    let b = q.denom().to_u32().expect("valuation denominator out of range");
    (a, b)
}

/// Drops the factor `x^k` at the low end.
fn strip_zero_roots(mut p: Vec<Rational>) -> Vec<Rational> {
    let k = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    p.drain(..k);
    p
}

/// Roots of an irreducible quadratic `γ + β x + α x²` in `Q(√d)`, positive radical first.
fn quadratic_roots(p: &[Rational]) -> Result<[QuadExt; 2]> {
    let (gamma, beta, alpha) = (&p[0], &p[1], &p[2]);
    let disc = beta * beta - Rational::from_integer(4.into()) * alpha * gamma;
    let (k, d) = sqrt_rational(&disc).ok_or(Error::UnsupportedRamification("complex or oversized quadratic extension"))?;
    let two_alpha = alpha * Rational::from_integer(2.into());
    let re = -(beta / &two_alpha);
    let im = (k / &two_alpha).abs();
    Ok([QuadExt::new(re.clone(), im.clone(), d), QuadExt::new(re, -im, d)])
}

/// Leading coefficient of the first nonzero radical part, used to order conjugates.
fn radical_sign(b: &Branch) -> i32 {
    for c in b.expansion.body().coeffs() {
        if !c.b().is_zero() {
            return if c.b().is_positive() { 1 } else { -1 };
        }
    }
    0
}

/// All branches of valuation `q` (a valuation reported by [`newton_polygon`]), known mod `z^prec`.
pub fn expand_branch(d: &PolyInTOverZ, q: &Rational, prec: i64) -> Result<Vec<Branch>> {
    let (a, b) = split(q);
    if b > 2 {
        return Err(Error::UnsupportedRamification("valuation denominator above 2"));
    }
    let eq = d.scale_substitute(a, b);
    let lead = strip_zero_roots(eq.at_inner_zero());
    let (roots, rest) = rational_roots(&lead)?;
    let mut out = Vec::new();
    for (c, mult) in roots {
        match mult {
            1 => {
                let chart = Chart { ramification: b, outer: a, center: Rational::zero(), inner: 0, multiplicity: 1 };
                out.push(chart.lift(&eq, QuadExt::rational(c), q, prec)?);
            }
            2 => out.extend(resolve_double_root(&eq, &c, a, b, q, prec)?),
            _ => return Err(Error::UnsupportedRamification("leading root of multiplicity above 2")),
        }
    }
    match rest.len() {
        0 | 1 => {}
        3 => {
            for root in quadratic_roots(&rest)? {
                let chart = Chart { ramification: b, outer: a, center: Rational::zero(), inner: 0, multiplicity: 1 };
                out.push(chart.lift(&eq, root, q, prec)?);
            }
        }
        _ => return Err(Error::UnsupportedRamification("irreducible leading factor of degree above 2")),
    }
    out.sort_by(|x, y| x.leading.a().cmp(y.leading.a()).then(radical_sign(y).cmp(&radical_sign(x))));
    Ok(out)
}

/// One recentering step `u = c + v` at a double root of the leading equation.
fn resolve_double_root(eq: &Bipoly, c: &Rational, a: i64, b: u32, q: &Rational, prec: i64) -> Result<Vec<Branch>> {
    let shifted = eq.shift_outer(c);
    if shifted.row(0).is_empty() {
        return Err(Error::UnsupportedRamification("repeated factor along a branch"));
    }
    let mut out = Vec::new();
    let mut covered = 0;
    for (q2, count) in newton_polygon(&shifted) {
        if covered >= 2 {
            break;
        }
        covered += count;
        if !q2.is_positive() {
            return Err(Error::UnsupportedRamification("degenerate recentering"));
        }
        let (a2, b2) = split(&q2);
        if b * b2 > 2 {
            return Err(Error::UnsupportedRamification("ramification above 2"));
        }
        let eq2 = shifted.scale_substitute(a2, b2);
        let lead = strip_zero_roots(eq2.at_inner_zero());
        let (roots, rest) = rational_roots(&lead)?;
        let chart = Chart { ramification: b * b2, outer: a * b2 as i64, center: c.clone(), inner: a2, multiplicity: 2 };
        for (nu0, mult) in roots {
            if mult > 1 {
                return Err(Error::UnsupportedRamification("nested multiple root"));
            }
            out.push(chart.lift(&eq2, QuadExt::rational(nu0), q, prec)?);
        }
        match rest.len() {
            0 | 1 => {}
            3 => {
                for root in quadratic_roots(&rest)? {
                    out.push(chart.lift(&eq2, root, q, prec)?);
                }
            }
            _ => return Err(Error::UnsupportedRamification("irreducible factor of degree above 2 after recentering")),
        }
    }
    out.sort_by_key(|br| -radical_sign(br));
    Ok(out)
}

/// Splits the roots of `D` into bounded (expanded in full) and unbounded (summarized).
///
/// Every bounded branch must come from a simple rational root of `D(t, 0)`.
pub fn classify_bounded(d: &PolyInTOverZ, prec: i64) -> Result<Classification> {
    let d0 = d.at_inner_zero();
    if d0.is_empty() {
        return Err(Error::InvalidArgument("D(t, 0) vanishes identically; strip the z-content first"));
    }
    let (roots, rest) = rational_roots(&d0)?;
    if let Some((root, multiplicity)) = roots.iter().find(|(_, m)| *m > 1) {
        return Err(Error::MultipleBoundedRoot { root: root.clone(), multiplicity: *multiplicity });
    }
    if rest.len() > 1 {
        return Err(Error::UnsupportedRamification("bounded root outside Q"));
    }
    let mut bounded = Vec::with_capacity(roots.len());
    for (t0, _) in roots {
        let expansion = hensel_lift(d, &t0, prec)?;
        let valuation = if !t0.is_zero() {
            Some(Rational::zero())
        } else {
            d.row_valuation(0).map(|v| Rational::from_integer((v as i64).into()))
        };
        bounded.push(BoundedBranch { t0, valuation, expansion });
    }
    let unbounded = newton_polygon(d).into_iter().filter(|(q, _)| q.is_negative()).collect();
    Ok(Classification { bounded, unbounded })
}

/// Every branch of `D`, bounded ones first, each known mod `z^prec`.
pub fn all_branches(d: &PolyInTOverZ, prec: i64) -> Result<Vec<Branch>> {
    let k = d.outer_content();
    let mut out = Vec::new();
    for _ in 0..k {
        out.push(Branch {
            valuation: None,
            ramification: 1,
            bounded: true,
            sqrt_d: None,
            expansion: PuiseuxSeries::from_laurent(Series::zero(prec)),
            multiplicity_at_leading_order: k,
            leading: QuadExt::zero(),
        });
    }
    let reduced = Bipoly::new(d.rows()[k..].to_vec());
    for (q, _) in newton_polygon(&reduced) {
        out.extend(expand_branch(&reduced, &q, prec)?);
    }
    Ok(out)
}

/// `D(s(z), z)` for a Puiseux series `s`.
pub fn residual(d: &PolyInTOverZ, s: &PuiseuxSeries<QuadExt>) -> PuiseuxSeries<QuadExt> {
    let r = s.ramification() as i64;
    let body = s.body();
    let bound = body.prec() + d.rows().len() as i64 * (body.valuation().abs() + 1) + r * (d.inner_degree() as i64 + 1);
    let mut acc = Series::zero(bound);
    for row in d.rows().iter().rev() {
        let mut coeffs = vec![QuadExt::zero(); (r * row.len() as i64) as usize];
        for (j, c) in row.iter().enumerate() {
            coeffs[(r * j as i64) as usize] = QuadExt::rational(c.clone());
        }
        acc = acc.mul(body).add(&Series::from_poly(coeffs, bound));
    }
    PuiseuxSeries::new(s.ramification(), acc)
}

/// Sum of a set of branch expansions, e.g. to check `Σ s_i = −c_{n−1}/c_n`.
pub fn sum_expansions<'a>(branches: impl IntoIterator<Item = &'a Branch>) -> Option<PuiseuxSeries<QuadExt>> {
    branches.into_iter().map(|b| b.expansion.clone()).reduce(|x, y| x.add(&y))
}

impl Branch {
    /// Coefficient of `z^exponent`.
    pub fn coeff(&self, exponent: &Rational) -> Result<QuadExt> {
        self.expansion.coeff(exponent)
    }

    pub fn is_ramified(&self) -> bool {
        self.ramification > 1
    }

    /// `true` if the expansion is a conjugate of `other` under `√d ↦ −√d`,
    /// or, for ramification 2, under `z^(1/2) ↦ −z^(1/2)`.
    pub fn is_conjugate_of(&self, other: &Branch) -> bool {
        let radical = self.sqrt_d.is_some()
            && self.sqrt_d == other.sqrt_d
            && self.expansion.map(QuadExt::conjugate).agrees_with(&other.expansion);
        let monodromy = self.ramification == 2
            && other.ramification == 2
            && PuiseuxSeries::new(2, self.expansion.body().reflect()).agrees_with(&other.expansion);
        radical || monodromy
    }
}
