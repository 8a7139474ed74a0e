//! Dense bivariate polynomials over `Q` and univariate root finding.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial_int, common_denominator, Field, Rational};
use crate::series::Series;

/// `∑ rows[i][j] · t^i · z^j`.
///
/// The first variable indexes rows, the second indexes entries within a row.
/// For the diagonal pipeline the pair is `(t, z)`; for the input function it is `(x, y)`.
/// Rows carry no trailing zeros and the last row is nonzero (the zero polynomial has no rows).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bipoly {
    rows: Vec<Vec<Rational>>,
}

/// A polynomial in `t` whose coefficients are polynomials in `z`.
pub type PolyInTOverZ = Bipoly;

impl Bipoly {
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        let mut p = Bipoly { rows };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Bipoly::default()
    }

    /// Builds from `(i, j, c)` triples; repeated positions are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, Rational::zero());
            }
            rows[i][j] += c;
        }
        Bipoly::new(rows)
    }

    /// Integer-coefficient shorthand for tests and built-in instances.
    pub fn from_int_terms(terms: &[(usize, usize, i64)]) -> Self {
        Bipoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, Rational::from_integer(c.into()))))
    }

    fn trim(&mut self) {
        for row in &mut self.rows {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in the first variable; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Highest power of the second variable.
    pub fn inner_degree(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Coefficient of the first variable to the `i`, as a polynomial in the second.
    pub fn row(&self, i: usize) -> &[Rational] {
        self.rows.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.row(i).get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms `(i, j, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (i, j, c)))
    }

    /// Valuation in the second variable of row `i`; `None` if the row is zero.
    pub fn row_valuation(&self, i: usize) -> Option<usize> {
        self.row(i).iter().position(|c| !c.is_zero())
    }

    /// Largest power of the second variable dividing the whole polynomial.
    pub fn inner_content(&self) -> usize {
        (0..self.rows.len()).filter_map(|i| self.row_valuation(i)).min().unwrap_or(0)
    }

    /// Largest power of the first variable dividing the whole polynomial.
    pub fn outer_content(&self) -> usize {
        self.rows.iter().position(|r| !r.is_empty()).unwrap_or(0)
    }

    /// Divides by `second^k`; the caller guarantees divisibility.
    pub fn div_inner_power(&self, k: usize) -> Self {
        Bipoly::new(self.rows.iter().map(|r| r.iter().skip(k).cloned().collect()).collect())
    }

    /// Multiplies by `first^k`.
    pub fn mul_outer_power(&self, k: usize) -> Self {
        let mut rows = vec![Vec::new(); k];
        rows.extend(self.rows.iter().cloned());
        Bipoly::new(rows)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Bipoly::from_terms(self.terms().chain(rhs.terms()).map(|(i, j, c)| (i, j, c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Bipoly::new(self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::new();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.push((i + k, j + l, a * b));
            }
        }
        Bipoly::from_terms(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Bipoly::from_int_terms(&[(0, 0, 1)]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in the first variable.
    pub fn derivative(&self) -> Self {
        Bipoly::new(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.iter().map(|c| c * Rational::from_integer((i as i64).into())).collect())
                .collect(),
        )
    }

    /// Sets the second variable to zero: a univariate polynomial in the first.
    pub fn at_inner_zero(&self) -> Vec<Rational> {
        let mut p: Vec<Rational> = self.rows.iter().map(|r| r.first().cloned().unwrap_or_else(Rational::zero)).collect();
        trim_univariate(&mut p);
        p
    }

    /// Substitutes `first ↦ c + first` (Taylor shift).
    pub fn shift_outer(&self, c: &Rational) -> Self {
        let mut out = Vec::new();
        for (i, j, a) in self.terms() {
            let mut cp = Rational::one();
            // a·(c + v)^i = Σ_k binom(i,k) c^(i-k) v^k
            let powers: Vec<Rational> = (0..=i)
                .map(|_| {
                    let v = cp.clone();
                    cp *= c;
                    v
                })
                .collect();
            for k in 0..=i {
                let coef = Rational::from_integer(binomial_int(i as u64, k as u64)) * &powers[i - k] * a;
                out.push((k, j, coef));
            }
        }
        Bipoly::from_terms(out)
    }

    /// `w^(-μ) · P(u·w^a, w^b)` with `μ` the least exponent of `w` that occurs,
    /// so the result is a polynomial in `(u, w)` not divisible by `w`.
    pub fn scale_substitute(&self, a: i64, b: u32) -> Self {
        let b = b as i64;
        let mu = self.terms().map(|(i, j, _)| a * i as i64 + b * j as i64).min().unwrap_or(0);
        Bipoly::from_terms(self.terms().map(|(i, j, c)| (i, (a * i as i64 + b * j as i64 - mu) as usize, c.clone())))
    }

    /// Evaluates at `first = s`, with the second variable the series variable.
    ///
    /// The polynomial rows are exact; the result carries whatever precision
    /// the series arithmetic justifies.
    pub fn eval_series<F: Field>(&self, s: &Series<F>) -> Series<F> {
        let bound = self.row_bound(s.prec(), s.valuation());
        let mut acc = Series::zero(bound);
        for row in self.rows.iter().rev() {
            acc = acc.mul(s).add(&row_series(row, bound));
        }
        acc
    }

    fn row_bound(&self, prec: i64, valuation: i64) -> i64 {
        let d = self.rows.len() as i64;
        prec + d * valuation.abs() + self.inner_degree() as i64 + d + 1
    }
}

fn row_series<F: Field>(row: &[Rational], prec: i64) -> Series<F> {
    Series::from_poly(row.iter().map(F::from_rational).collect(), prec)
}

fn trim_univariate(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Renders with the given variable names, lowest powers first.
pub struct Named<'a> {
    pub poly: &'a Bipoly,
    pub outer: &'a str,
    pub inner: &'a str,
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, &Rational)> = self.poly.terms().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by_key(|&(i, j, _)| (i, j));
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let mono = monomial_text(&[(self.outer, *i), (self.inner, *j)]);
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn monomial_text(factors: &[(&str, usize)]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = factors
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { alloc::string::String::from(*v) } else { alloc::format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// Evaluates a univariate polynomial (ascending coefficients).
pub fn eval_univariate(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x − root)`, assuming it is a root.
fn deflate(p: &[Rational], root: &Rational) -> Vec<Rational> {
    let n = p.len();
    let mut q = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for k in (1..n).rev() {
        carry = &p[k] + carry * root;
        q[k - 1] = carry.clone();
    }
    q
}

/// Roots with multiplicities, and the cofactor.
pub type RationalRoots = (Vec<(Rational, usize)>, Vec<Rational>);

/// Rational roots of a univariate polynomial with their multiplicities,
/// sorted ascending, plus the cofactor left once they are divided out.
///
/// Uses the rational root theorem; fails with `InvalidArgument` if the
/// integer coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &[Rational]) -> Result<RationalRoots> {
    let mut p = p.to_vec();
    trim_univariate(&mut p);
    if p.is_empty() {
        return Err(Error::InvalidArgument("roots of the zero polynomial"));
    }
    let mut roots = Vec::new();
    let zeros = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if zeros > 0 {
        roots.push((Rational::zero(), zeros));
        p.drain(..zeros);
    }
    if p.len() > 1 {
        let den = common_denominator(&p);
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs().to_u64().ok_or(Error::InvalidArgument("leading coefficient too large"))?;
        let tail = ints[0].abs().to_u64().ok_or(Error::InvalidArgument("constant coefficient too large"))?;
        let mut candidates = Vec::new();
        for num in divisors(tail) {
            for den in divisors(lead) {
                let q = Rational::new(BigInt::from(num), BigInt::from(den));
                candidates.push(q.clone());
                candidates.push(-q);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let mut mult = 0;
            while p.len() > 1 && eval_univariate(&p, &c).is_zero() {
                p = deflate(&p, &c);
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((roots, p))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Multiplicity of `x` as a root of `p` (`p` nonzero).
pub fn root_multiplicity(p: &[Rational], x: &Rational) -> usize {
    let mut p = p.to_vec();
    trim_univariate(&mut p);
    let mut mult = 0;
    while p.len() > 1 && eval_univariate(&p, x).is_zero() {
        p = deflate(&p, x);
        mult += 1;
    }
    mult
}

/// gcd of the entries; zero for an empty or all-zero collection.
pub(crate) fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use alloc::string::ToString;

    fn a348410_denominator() -> Bipoly {
        // -1 + t - z t^2 - z^2 t^3 + z^3 t^4
        Bipoly::from_int_terms(&[(0, 0, -1), (1, 0, 1), (2, 1, -1), (3, 2, -1), (4, 3, 1)])
    }

    #[test]
    fn display_named() {
        let d = a348410_denominator();
        let text = Named { poly: &d, outer: "t", inner: "z" }.to_string();
        assert_eq!(text, "-1 + t - t^2*z - t^3*z^2 + t^4*z^3");
    }

    #[test]
    fn roots_of_leading_equation() {
        // u - u^2 - u^3 + u^4 = u (u - 1)^2 (u + 1)
        let p = vec![int(0), int(1), int(-1), int(-1), int(1)];
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![(int(-1), 1), (int(0), 1), (int(1), 2)]);
        assert_eq!(rest.len(), 1);
    }

    #[test]
    fn irreducible_quadratic_left_over() {
        // (2x - 1)(x^2 - 2)
        let p = vec![int(2), int(-4), int(-1), int(2)];
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![(rat(1, 2), 1)]);
        assert_eq!(rest.len(), 3);
        assert!((rest[0].clone() / &rest[2]) == int(-2));
    }

    #[test]
    fn taylor_shift() {
        let p = Bipoly::from_int_terms(&[(2, 0, 1)]); // t^2
        let q = p.shift_outer(&int(1)); // 1 + 2v + v^2
        assert_eq!(q, Bipoly::from_int_terms(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)]));
    }

    #[test]
    fn scaled_substitution_of_unbounded_part() {
        // t = u/z: z·D(u/z, z) = -z + u - u^2 - u^3 + u^4
        let e = a348410_denominator().scale_substitute(-1, 1);
        assert_eq!(e, Bipoly::from_int_terms(&[(0, 1, -1), (1, 0, 1), (2, 0, -1), (3, 0, -1), (4, 0, 1)]));
    }

    #[test]
    fn evaluate_on_series() {
        // D(1 + z + 3z^2, z) vanishes to O(z^3)
        let s = Series::from_poly(vec![int(1), int(1), int(3)], 3);
        let r = a348410_denominator().eval_series(&s);
        assert!(r.is_zero());
        assert_eq!(r.prec(), 3);
    }

    #[test]
    fn contents() {
        let p = Bipoly::from_int_terms(&[(1, 2, 1), (2, 3, 1)]);
        assert_eq!(p.inner_content(), 2);
        assert_eq!(p.outer_content(), 1);
        assert_eq!(p.div_inner_power(2), Bipoly::from_int_terms(&[(1, 0, 1), (2, 1, 1)]));
    }
}
