//! Guessing algebraic equations and P-recurrences from coefficient lists.
//!
//! Both guessers build the linear system whose unknowns are the candidate
//! relation's coefficients, take its exact kernel, and re-verify the
//! result against all of the data before returning it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel, make_primitive};
use crate::poly::monomial_text;
use crate::scalar::Rational;
use crate::series::Series;

/// Extra coefficients required beyond the number of unknowns.
pub const DEFAULT_MARGIN: usize = 10;

/// `Σ grid[i][j] · g^i · z^j = 0`, primitive, first nonzero entry (row-major) positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicEquation {
    grid: Vec<Vec<BigInt>>,
}

impl AlgebraicEquation {
    /// Normalizes `grid` (rows indexed by the power of `g`).
    ///
    /// Panics if the rows have different lengths.
    pub fn new(mut grid: Vec<Vec<BigInt>>) -> Self {
        let width = grid.first().map_or(0, Vec::len);
        assert!(grid.iter().all(|r| r.len() == width), "ragged coefficient grid");
        let mut flat: Vec<BigInt> = grid.iter().flatten().cloned().collect();
        make_primitive(&mut flat);
        if flat.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            flat.iter_mut().for_each(|x| *x = -x.clone());
        }
        for (k, x) in flat.into_iter().enumerate() {
            grid[k / width][k % width] = x;
        }
        AlgebraicEquation { grid }
    }

    pub fn from_i64(grid: &[&[i64]]) -> Self {
        AlgebraicEquation::new(grid.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn grid(&self) -> &[Vec<BigInt>] {
        &self.grid
    }

    /// Bound on the power of `g` (grid height minus one).
    pub fn deg_g(&self) -> usize {
        self.grid.len().saturating_sub(1)
    }

    pub fn deg_z(&self) -> usize {
        self.grid.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    /// `P(z, g(z))` as a truncated series.
    pub fn residual(&self, g: &Series<Rational>) -> Series<Rational> {
        // exact rows get a precision that never binds
        let bound = g.prec().max(0) + self.deg_z() as i64 + 1 + g.valuation().abs() * self.grid.len() as i64;
        let mut acc = Series::zero(bound);
        for row in self.grid.iter().rev() {
            let coeffs = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
            acc = acc.mul(g).add(&Series::from_poly(coeffs, bound));
        }
        acc
    }
}

/// Valuation of `P(z, g(z))`; the relation holds to order `N` iff the result is at least `N`.
pub fn verify_algeq(p: &AlgebraicEquation, g: &Series<Rational>) -> i64 {
    p.residual(g).valuation()
}

/// `Σ_{i=0}^{r} p_i(m) · a_{m+i} = 0` for all `m >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// `coeff_polys[i][d]` is the coefficient of `m^d` in `p_i`.
    coeff_polys: Vec<Vec<BigInt>>,
}

impl Recurrence {
    /// Drops vanishing top polynomials, makes the collection primitive and the
    /// leading coefficient of `p_r` positive.
    pub fn new(mut coeff_polys: Vec<Vec<BigInt>>) -> Result<Self> {
        for p in &mut coeff_polys {
            while p.last().is_some_and(Zero::is_zero) {
                p.pop();
            }
        }
        while coeff_polys.last().is_some_and(Vec::is_empty) {
            coeff_polys.pop();
        }
        if coeff_polys.is_empty() {
            return Err(Error::InvalidArgument("recurrence with all-zero coefficients"));
        }
        let mut flat: Vec<BigInt> = coeff_polys.iter().flatten().cloned().collect();
        make_primitive(&mut flat);
        let mut it = flat.into_iter();
        for p in &mut coeff_polys {
            for x in p.iter_mut() {
                *x = it.next().unwrap();
            }
        }
        if coeff_polys.last().unwrap().last().unwrap().is_negative() {
            for x in coeff_polys.iter_mut().flatten() {
                *x = -x.clone();
            }
        }
        Ok(Recurrence { coeff_polys })
    }

    pub fn from_i64(polys: &[&[i64]]) -> Result<Self> {
        Recurrence::new(polys.iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.coeff_polys.len() - 1
    }

    pub fn coeff_polys(&self) -> &[Vec<BigInt>] {
        &self.coeff_polys
    }

    /// `p_i(m)`.
    pub fn eval_poly(&self, i: usize, m: i64) -> BigInt {
        let m = BigInt::from(m);
        self.coeff_polys[i].iter().rev().fold(BigInt::zero(), |acc, c| acc * &m + c)
    }

    /// `Σ_i p_i(m)·a_{m+i}`; `coeffs` must reach index `m + order`.
    pub fn apply_at(&self, coeffs: &[Rational], m: usize) -> Rational {
        (0..=self.order()).fold(Rational::zero(), |acc, i| {
            acc + Rational::from_integer(self.eval_poly(i, m as i64)) * &coeffs[m + i]
        })
    }

    /// Extends `initial` (at least `order` terms) to `len` terms; `None` if
    /// `p_r(m)` vanishes at some step.
    pub fn unroll(&self, initial: &[Rational], len: usize) -> Option<Vec<Rational>> {
        let r = self.order();
        let mut out = initial.to_vec();
        while out.len() < len {
            let m = out.len() - r;
            let lead = self.eval_poly(r, m as i64);
            if lead.is_zero() {
                return None;
            }
            let partial = (0..r).fold(Rational::zero(), |acc, i| {
                acc + Rational::from_integer(self.eval_poly(i, m as i64)) * &out[m + i]
            });
            out.push(-partial / Rational::from_integer(lead));
        }
        Some(out)
    }
}

/// First `m` at which the recurrence fails on `coeffs`, or `None` if it holds
/// for every window that fits.
pub fn verify_rec(r: &Recurrence, coeffs: &[Rational]) -> Option<usize> {
    verify_rec_from(r, coeffs, 0)
}

/// Like [`verify_rec`], skipping the windows with `m < from`.
pub fn verify_rec_from(r: &Recurrence, coeffs: &[Rational], from: usize) -> Option<usize> {
    if coeffs.len() <= r.order() {
        return None;
    }
    (from..coeffs.len() - r.order()).find(|&m| !r.apply_at(coeffs, m).is_zero())
}

/// A verified relation plus the dimension of the kernel it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guess<T> {
    pub relation: T,
    pub kernel_dimension: usize,
}

impl<T> Guess<T> {
    /// More than one independent relation fits the data; the one returned has
    /// the most trailing zero coefficients.
    pub fn is_ambiguous(&self) -> bool {
        self.kernel_dimension > 1
    }
}

/// Guesses `P(z, g) = 0` with `deg_g(P) <= deg_g`, `deg_z(P) <= deg_z` from
/// the first coefficients of `g`.
pub fn guess_algeq(coeffs: &[Rational], deg_g: usize, deg_z: usize, margin: usize) -> Result<Guess<AlgebraicEquation>> {
    let unknowns = (deg_g + 1) * (deg_z + 1);
    let needed = unknowns + margin;
    if coeffs.len() < needed {
        return Err(Error::InsufficientData { needed, got: coeffs.len() });
    }
    let n = coeffs.len();
    let g = Series::from_coefficients(coeffs);
    let mut powers = Vec::with_capacity(deg_g + 1);
    powers.push(Series::one(n as i64));
    for i in 1..=deg_g {
        powers.push(powers[i - 1].mul(&g));
    }
    let rows: Vec<Vec<Rational>> = (0..n as i64)
        .map(|k| {
            let mut row = Vec::with_capacity(unknowns);
            for p in &powers {
                for j in 0..=deg_z as i64 {
                    row.push(if k >= j { p.coeff(k - j).unwrap_or_else(|_| Rational::zero()) } else { Rational::zero() });
                }
            }
            row
        })
        .collect();
    let basis = kernel(&rows, unknowns);
    let first = basis.first().ok_or(Error::NoRelation)?;
    let grid = first.chunks(deg_z + 1).map(<[BigInt]>::to_vec).collect();
    let relation = AlgebraicEquation::new(grid);
    if verify_algeq(&relation, &g) < n as i64 {
        return Err(Error::NoRelation);
    }
    Ok(Guess { relation, kernel_dimension: basis.len() })
}

/// Guesses a recurrence of the given order with coefficient polynomials of
/// degree at most `deg` in `m`.
pub fn guess_rec(coeffs: &[Rational], order: usize, deg: usize, margin: usize) -> Result<Guess<Recurrence>> {
    guess_rec_from(coeffs, order, deg, margin, 0)
}

/// Like [`guess_rec`], but the relation is only required for `m >= from`.
pub fn guess_rec_from(
    coeffs: &[Rational],
    order: usize,
    deg: usize,
    margin: usize,
    from: usize,
) -> Result<Guess<Recurrence>> {
    let unknowns = (order + 1) * (deg + 1);
    let needed = from + unknowns + order + margin;
    if coeffs.len() < needed {
        return Err(Error::InsufficientData { needed, got: coeffs.len() });
    }
    let rows: Vec<Vec<Rational>> = (from..coeffs.len() - order)
        .map(|m| {
            let mut row = Vec::with_capacity(unknowns);
            for i in 0..=order {
                let mut mp = Rational::from_integer(1.into());
                for _ in 0..=deg {
                    row.push(&mp * &coeffs[m + i]);
                    mp *= Rational::from_integer((m as i64).into());
                }
            }
            row
        })
        .collect();
    let basis = kernel(&rows, unknowns);
    let first = basis.first().ok_or(Error::NoRelation)?;
    let relation = Recurrence::new(first.chunks(deg + 1).map(<[BigInt]>::to_vec).collect())?;
    if verify_rec_from(&relation, coeffs, from).is_some() {
        return Err(Error::NoRelation);
    }
    Ok(Guess { relation, kernel_dimension: basis.len() })
}

fn int_poly_text(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = monomial_text(&[(var, d)]);
        let abs = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&alloc::format!(" {sign} "));
        }
        if mono.is_empty() {
            out.push_str(&alloc::format!("{abs}"));
        } else if abs.to_u8() == Some(1) {
            out.push_str(&mono);
        } else {
            out.push_str(&alloc::format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn nonzero_terms(coeffs: &[BigInt]) -> usize {
    coeffs.iter().filter(|c| !c.is_zero()).count()
}

impl fmt::Display for AlgebraicEquation {
    /// Powers of `g` descending, e.g. `(256*z^2 + 107*z - 32)*g^4 + ... + z^2 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.grid.iter().enumerate().rev() {
            if nonzero_terms(row) == 0 {
                continue;
            }
            let poly = int_poly_text(row, "z");
            let g = monomial_text(&[("g", i)]);
            let term = match (g.is_empty(), nonzero_terms(row) > 1, poly.as_str()) {
                (true, _, _) => poly.clone(),
                (false, false, "1") => g,
                (false, false, "-1") => alloc::format!("-{g}"),
                (false, false, _) => alloc::format!("{poly}*{g}"),
                (false, true, _) => alloc::format!("({poly})*{g}"),
            };
            write_signed(f, &term, first)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

impl fmt::Display for Recurrence {
    /// `(p_0(m))*a(m) + (p_1(m))*a(m+1) + ... = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeff_polys.iter().enumerate() {
            if nonzero_terms(p) == 0 {
                continue;
            }
            let a = if i == 0 { String::from("a(m)") } else { alloc::format!("a(m+{i})") };
            let poly = int_poly_text(p, "m");
            let term = match (nonzero_terms(p) > 1, poly.as_str()) {
                (false, "1") => a,
                (false, "-1") => alloc::format!("-{a}"),
                (false, _) => alloc::format!("{poly}*{a}"),
                (true, _) => alloc::format!("({poly})*{a}"),
            };
            write_signed(f, &term, first)?;
            first = false;
        }
        f.write_str(" = 0")
    }
}

fn write_signed(f: &mut fmt::Formatter<'_>, term: &str, first: bool) -> fmt::Result {
    match (first, term.strip_prefix('-')) {
        (true, _) => f.write_str(term),
        (false, Some(rest)) => write!(f, " - {rest}"),
        (false, None) => write!(f, " + {term}"),
    }
}
