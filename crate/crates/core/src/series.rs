//! Truncated Laurent series with explicit precision.
//!
//! A [`Series`] stands for `∑_{e=v}^{prec-1} c_e z^e + O(z^prec)`. Every
//! operation documents the precision of its result and never claims more
//! than the inputs justify.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Series<F> {
    valuation: i64,
    coeffs: Vec<F>,
    prec: i64,
}

impl<F: Field> Series<F> {
    /// Builds `∑ coeffs[k] z^(start+k) + O(z^prec)`.
    ///
    /// Coefficients at exponents `>= prec` are dropped; missing ones up to `prec` are zero.
    pub fn new(start: i64, mut coeffs: Vec<F>, prec: i64) -> Self {
        let len = (prec - start).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, F::zero());
        let mut s = Series { valuation: start, coeffs, prec };
        s.normalize();
        s
    }

    /// A polynomial `∑ coeffs[k] z^k` viewed as a series known mod `z^prec`.
    pub fn from_poly(coeffs: Vec<F>, prec: i64) -> Self {
        Series::new(0, coeffs, prec)
    }

    pub fn zero(prec: i64) -> Self {
        Series { valuation: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(c: F, prec: i64) -> Self {
        Series::new(0, vec![c], prec)
    }

    pub fn one(prec: i64) -> Self {
        Series::constant(F::one(), prec)
    }

    /// `c·z^exponent + O(z^prec)`.
    pub fn monomial(c: F, exponent: i64, prec: i64) -> Self {
        Series::new(exponent, vec![c], prec)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.prec;
            }
        }
    }

    /// Exponent of the leading nonzero term; equals `prec` for a series zero to precision.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients from the valuation on.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients for exponents `valuation()..prec()`.
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `z^exponent`; asking at or beyond the precision is an error.
    pub fn coeff(&self, exponent: i64) -> Result<F> {
        if exponent >= self.prec {
            return Err(Error::BeyondPrecision { exponent, prec: self.prec });
        }
        if exponent < self.valuation {
            return Ok(F::zero());
        }
        Ok(self.coeffs[(exponent - self.valuation) as usize].clone())
    }

    /// Coefficients of `z^from .. z^to`, all of which must be known.
    pub fn coeff_range(&self, from: i64, to: i64) -> Result<Vec<F>> {
        (from..to).map(|e| self.coeff(e)).collect()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (v + k as i64, c))
    }

    /// Lowers the precision to `min(self.prec, prec)`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let keep = (prec - self.valuation).max(0) as usize;
        let mut out = Series { valuation: self.valuation, coeffs: self.coeffs[..keep.min(self.coeffs.len())].to_vec(), prec };
        if out.coeffs.is_empty() {
            out.valuation = prec;
        }
        out.normalize();
        out
    }

    /// Same coefficients, precision raised to `prec` by declaring the missing terms zero.
    ///
    /// Only sound when the caller knows the series is a polynomial or is
    /// deliberately treating the truncation as exact (Newton steps, Horner with a known target).
    pub fn with_prec_padded(&self, prec: i64) -> Self {
        if prec <= self.prec {
            return self.truncate(prec);
        }
        if self.is_zero() {
            return Series::zero(prec);
        }
        Series::new(self.valuation, self.coeffs.clone(), prec)
    }

    /// Multiplication by `z^k`: valuation and precision both move by `k`.
    pub fn shift(&self, k: i64) -> Self {
        Series { valuation: self.valuation + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Series::zero(self.prec);
        }
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            prec: self.prec,
        }
    }

    /// Applies `f` to every coefficient, e.g. to change field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Series<G> {
        Series::new(self.valuation, self.coeffs.iter().map(f).collect(), self.prec)
    }

    /// Precision `min(prec_a, prec_b)`.
    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let start = self.valuation.min(rhs.valuation).min(prec);
        let len = (prec - start) as usize;
        let mut out = vec![F::zero(); len];
        for src in [self, rhs] {
            for (k, c) in src.coeffs.iter().enumerate() {
                let e = src.valuation + k as i64;
                if e >= prec {
                    break;
                }
                let slot = &mut out[(e - start) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Series::new(start, out, prec)
    }

    pub fn neg(&self) -> Self {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Cauchy product; precision `min(v_a + prec_b, v_b + prec_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let valuation = self.valuation + rhs.valuation;
        let prec = (self.valuation + rhs.prec).min(rhs.valuation + self.prec);
        let n = (prec - valuation).max(0) as usize;
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series::new(valuation, out, prec)
    }

    /// `1/self`: valuation `-v`, precision `prec − 2v`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let n = self.coeffs.len();
        let lead_inv = self.coeffs[0].inv().ok_or(Error::DivisionByZeroSeries)?;
        let mut out: Vec<F> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * lead_inv.clone()));
        }
        Ok(Series::new(-self.valuation, out, self.prec - 2 * self.valuation))
    }

    /// `self/rhs`; valuation `v_a − v_b`, precision `min(v_a + prec_b − 2v_b, prec_a − v_b)`.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Integer power; negative exponents go through [`Series::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut result = Series::one(self.relative_prec());
        let mut base = self.clone();
        let mut e = k as u64;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Termwise `d/dz`; precision drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * F::from_i64(self.valuation + k as i64))
            .collect();
        Series::new(self.valuation - 1, coeffs, self.prec - 1)
    }

    /// Formal antiderivative with zero constant term; precision rises by one.
    ///
    /// Fails if the series has a `z^-1` term.
    pub fn integral(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + k as i64;
            if e == -1 {
                if !c.is_zero() {
                    return Err(Error::InvalidArgument("integral of a series with a z^-1 term"));
                }
                coeffs.push(F::zero());
            } else {
                coeffs.push(c.clone() / F::from_i64(e + 1));
            }
        }
        Ok(Series::new(self.valuation + 1, coeffs, self.prec + 1))
    }

    /// `log(1 + self)`; the argument must have no constant or negative-power terms.
    ///
    /// Precision equals that of `self`.
    pub fn log1p(&self) -> Result<Self> {
        if self.prec < 1 || self.valuation < 1 {
            return Err(Error::InvalidArgument("log1p: constant term of 1 + a must be exactly 1"));
        }
        let one_plus = Series::one(self.prec).add(self);
        self.derivative().div(&one_plus)?.integral()
    }

    /// `outer(inner(z))` for `inner` of valuation at least one.
    ///
    /// With `v` the valuation of `inner` and `e` the lowest non-constant
    /// exponent present in `outer`, the result is known mod
    /// `z^min(v·prec_outer, prec_inner + v·(e − 1))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.valuation < 1 {
            return Err(Error::InvalidArgument("compose: inner series must have valuation >= 1"));
        }
        let v = inner.valuation;
        let mut prec = v * self.prec;
        if let Some((e, _)) = self.terms().find(|(e, _)| *e != 0) {
            prec = prec.min(inner.prec + v * (e - 1));
        }
        // outer = z^low · Q(z) with Q a polynomial
        let low = self.valuation.min(0);
        let work = prec - low * v;
        let inner_exact = inner.with_prec_padded(work.max(inner.prec));
        let mut acc = Series::zero(work);
        let top = self.prec - 1;
        let mut e = top;
        while e >= low {
            let c = self.coeff(e)?;
            acc = acc.mul(&inner_exact).truncate(work);
            if !c.is_zero() {
                acc = acc.add(&Series::constant(c, work));
            }
            e -= 1;
        }
        let out = if low < 0 { acc.mul(&inner.pow(low)?) } else { acc };
        debug_assert!(out.prec >= prec);
        Ok(out.truncate(prec))
    }

    /// Substitutes `z ↦ −z`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.valuation + k as i64) % 2 == 0 { c.clone() } else { -c.clone() })
            .collect();
        Series::new(self.valuation, coeffs, self.prec)
    }

    /// Exponent of the first coefficient where the two series differ, or
    /// `None` if they agree up to the smaller precision.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let diff = self.sub(other);
        (!diff.is_zero()).then_some(diff.valuation)
    }

    /// Equality up to the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl Series<Rational> {
    /// Power series `∑ values[k] z^k + O(z^len)`.
    pub fn from_coefficients(values: &[Rational]) -> Self {
        Series::from_poly(values.to_vec(), values.len() as i64)
    }
}

impl<F: Field> Add for &Series<F> {
    type Output = Series<F>;
    fn add(self, rhs: &Series<F>) -> Series<F> {
        Series::add(self, rhs)
    }
}

impl<F: Field> Sub for &Series<F> {
    type Output = Series<F>;
    fn sub(self, rhs: &Series<F>) -> Series<F> {
        Series::sub(self, rhs)
    }
}

impl<F: Field> Mul for &Series<F> {
    type Output = Series<F>;
    fn mul(self, rhs: &Series<F>) -> Series<F> {
        Series::mul(self, rhs)
    }
}

impl<F: Field> Neg for &Series<F> {
    type Output = Series<F>;
    fn neg(self) -> Series<F> {
        Series::neg(self)
    }
}

/// Writes the series as `c*z^e + ... + O(z^prec)`.
pub(crate) fn write_terms<'a, F: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (alloc::string::String, &'a F)>,
    big_o: &str,
) -> fmt::Result {
    let mut first = true;
    for (power, c) in terms {
        let text = alloc::format!("{c}");
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.as_str()),
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (power.is_empty(), body == "1") {
            (true, _) => f.write_str(body)?,
            (false, true) => f.write_str(&power)?,
            (false, false) => write!(f, "{body}*{power}")?,
        }
    }
    if first {
        f.write_str(big_o)
    } else {
        write!(f, " + {big_o}")
    }
}

pub(crate) fn power_text(var: &str, e: i64, r: u32) -> alloc::string::String {
    use alloc::format;
    if e == 0 {
        return alloc::string::String::new();
    }
    let q = Rational::new(e.into(), (r as i64).into());
    if q.is_one() {
        alloc::string::String::from(var)
    } else if q.is_integer() && e > 0 {
        format!("{var}^{q}")
    } else {
        format!("{var}^({q})")
    }
}

/// Display adapter with a chosen variable name; see [`Series::in_var`].
pub struct InVar<'a, F> {
    series: &'a Series<F>,
    var: &'a str,
}

impl<F: Field> Series<F> {
    /// Renders in `var` instead of `z`.
    pub fn in_var<'a>(&'a self, var: &'a str) -> InVar<'a, F> {
        InVar { series: self, var }
    }
}

impl<F: Field> fmt::Display for InVar<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.series;
        let big_o = alloc::format!("O({})", {
            let p = power_text(self.var, s.prec, 1);
            if p.is_empty() { alloc::string::String::from("1") } else { p }
        });
        write_terms(f, s.terms().map(|(e, c)| (power_text(self.var, e, 1), c)), &big_o)
    }
}

impl<F: Field> fmt::Display for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.in_var("z").fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, int, rat};
    use alloc::string::ToString;

    type S = Series<Rational>;

    fn poly(cs: &[i64], prec: i64) -> S {
        S::from_poly(cs.iter().map(|&c| int(c)).collect(), prec)
    }

    fn ints(s: &S, from: i64, to: i64) -> Vec<Rational> {
        s.coeff_range(from, to).unwrap()
    }

    #[test]
    fn add_cancels() {
        let s = poly(&[1, 1], 6).add(&poly(&[1, -1], 4));
        assert_eq!(s.prec(), 4);
        assert_eq!(ints(&s, 0, 4), vec![int(2), int(0), int(0), int(0)]);
        let laurent = S::new(-1, vec![int(1)], 3).add(&S::monomial(int(1), 1, 3));
        assert_eq!(laurent.to_string(), "z^(-1) + z + O(z^3)");
    }

    #[test]
    fn geometric_inverse() {
        let geo = poly(&[1; 10], 10);
        let p = poly(&[1, -1], 20).mul(&geo);
        assert_eq!(p.prec(), 10);
        assert_eq!(ints(&p, 0, 10), [vec![int(1)], vec![int(0); 9]].concat());
    }

    #[test]
    fn numerator_expansion() {
        // (1+x)(1-x)^2 = 1 - x - x^2 + x^3
        let a = poly(&[1, 1], 10).mul(&poly(&[1, -1], 10).pow(2).unwrap());
        assert_eq!(ints(&a, 0, 5), vec![int(1), int(-1), int(-1), int(1), int(0)]);
    }

    #[test]
    fn mul_precision_formula() {
        let a = S::new(2, vec![int(1), int(3)], 7);
        let b = S::new(-1, vec![int(2)], 4);
        let c = a.mul(&b);
        assert_eq!(c.valuation(), 1);
        // min(v(a) + prec(b), v(b) + prec(a)) = min(2 + 4, -1 + 7)
        assert_eq!(c.prec(), 6);
    }

    #[test]
    fn division_examples() {
        let g = poly(&[1], 8).div(&poly(&[1, -1], 8)).unwrap();
        assert_eq!(ints(&g, 0, 8), vec![int(1); 8]);
        let inv = S::monomial(int(1), 2, 5).inverse().unwrap();
        assert_eq!(inv.valuation(), -2);
        assert_eq!(inv.prec(), 1);
        assert_eq!(inv.coeff(-2).unwrap(), int(1));
        assert_eq!(S::zero(5).inverse(), Err(Error::DivisionByZeroSeries));
    }

    #[test]
    fn coefficient_beyond_precision_is_an_error() {
        let s = poly(&[1, 2, 3], 3);
        assert_eq!(s.coeff(2).unwrap(), int(3));
        assert_eq!(s.coeff(3), Err(Error::BeyondPrecision { exponent: 3, prec: 3 }));
        assert_eq!(s.coeff(-4).unwrap(), int(0));
    }

    #[test]
    fn log1p_examples() {
        let w = S::monomial(int(1), 1, 6);
        let l = w.log1p().unwrap();
        assert_eq!(l.prec(), 6);
        assert_eq!(ints(&l, 0, 6), vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)]);
        // log(1/(1-z)) with 1/(1-z) = 1 + (z + z^2 + ...)
        let a = poly(&[0, 1, 1, 1, 1, 1], 6);
        let l = a.log1p().unwrap();
        assert_eq!(ints(&l, 1, 6), vec![int(1), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)]);
        assert!(matches!(poly(&[1, 1], 5).log1p(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn harmonic_generating_function() {
        let minus_z = S::monomial(int(-1), 1, 5);
        let s = minus_z.log1p().unwrap().neg().div(&poly(&[1, -1], 5)).unwrap();
        assert_eq!(ints(&s, 1, 5), vec![int(1), rat(3, 2), rat(11, 6), rat(25, 12)]);
    }

    #[test]
    fn derivative_examples() {
        let d = poly(&[1, 1, 1], 3).derivative();
        assert_eq!(d.prec(), 2);
        assert_eq!(ints(&d, 0, 2), vec![int(1), int(2)]);
        let d = S::monomial(int(1), -1, 3).derivative();
        assert_eq!(d.valuation(), -2);
        assert_eq!(d.coeff(-2).unwrap(), int(-1));
    }

    #[test]
    fn derivative_of_central_binomial_log() {
        // d/du sum (1/k) binom(2k,k) u^k = sum binom(2k,k) u^(k-1)
        let coeffs = (0..6)
            .map(|k| if k == 0 { int(0) } else { binomial(2 * k, k).unwrap() / int(k) })
            .collect();
        let d = S::from_poly(coeffs, 6).derivative();
        assert_eq!(ints(&d, 0, 3), vec![int(2), int(6), int(20)]);
    }

    #[test]
    fn compose_examples() {
        let geo = poly(&[1; 6], 6);
        let z2 = S::monomial(int(1), 2, 10);
        let c = geo.compose(&z2).unwrap();
        assert_eq!(ints(&c, 0, 5), vec![int(1), int(0), int(1), int(0), int(1)]);

        let outer = poly(&[7, 1, 1], 3);
        let c = outer.compose(&S::zero(5)).unwrap();
        assert_eq!(ints(&c, 0, 5), vec![int(7), int(0), int(0), int(0), int(0)]);

        assert!(matches!(outer.compose(&poly(&[1, 1], 4)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn compose_gives_two_log() {
        let n = 8;
        let l = S::from_poly(
            (0..n).map(|k| if k == 0 { int(0) } else { binomial(2 * k, k).unwrap() / int(k) }).collect(),
            n,
        );
        let w = S::monomial(int(1), 1, n);
        let u = w.div(&poly(&[1, 1], n).pow(2).unwrap()).unwrap();
        let lhs = l.compose(&u).unwrap();
        let rhs = w.log1p().unwrap().scale(&int(2));
        assert_eq!(lhs.prec(), n);
        assert!(lhs.agrees_with(&rhs));
        assert_eq!(ints(&lhs, 1, 4), vec![int(2), int(-1), rat(2, 3)]);
    }

    #[test]
    fn compose_with_laurent_outer() {
        // (1/u) ∘ (z + z^2) = 1/z - 1 + z - ...
        let outer = S::new(-1, vec![int(1)], 5);
        let inner = poly(&[0, 1, 1], 10);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.valuation(), -1);
        assert_eq!(ints(&c, -1, 3), vec![int(1), int(-1), int(1), int(-1)]);
    }

    #[test]
    fn display_format() {
        let s = S::new(0, vec![int(1), rat(-1, 2), int(0), int(3)], 5);
        assert_eq!(s.to_string(), "1 - 1/2*z + 3*z^3 + O(z^5)");
        assert_eq!(S::zero(3).to_string(), "O(z^3)");
    }
}
