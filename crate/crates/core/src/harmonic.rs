//! Generalized binomial series and the harmonic-number identity
//!
//! ```text
//! H_n = (1/m) Σ_{k=1}^{n} ((−1)^{k+1}/k) C(mk, k) C(n + (m−1)k, n − k).
//! ```
//!
//! Series in `u` and `w` are related by `u = w / (1+w)^m`; the generating
//! function of the right-hand side lives in `z = −w`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial, int, Rational};
use crate::series::Series;

/// `H_n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + Rational::new(1.into(), k.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GBSeries {
    pub m: i64,
    pub prec: i64,
    /// `B(u)` with `B(0) = 1`.
    pub series: Series<Rational>,
}

impl GBSeries {
    /// `B − 1 − u·B^m`.
    pub fn residual(&self) -> Result<Series<Rational>> {
        let b = &self.series;
        Ok(b.sub(&Series::one(self.prec)).sub(&b.pow(self.m)?.shift(1)))
    }
}

/// Solves `B = 1 + u·B^m` mod `u^prec` by fixed-point iteration.
pub fn gbs_series(m: i64, prec: i64) -> Result<GBSeries> {
    if prec < 1 {
        return Err(Error::InvalidArgument("precision must be at least 1"));
    }
    let one = Series::one(prec);
    let mut b = one.clone();
    // each pass fixes one more coefficient
    for _ in 1..prec {
        b = one.add(&b.pow(m)?.shift(1)).truncate(prec);
    }
    Ok(GBSeries { m, prec, series: b })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub m: i64,
    pub n: Option<u64>,
    pub prec: Option<i64>,
}

/// Both sides of a checked identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Report<T> {
    pub lhs: T,
    pub rhs: T,
    pub equal: bool,
    pub params: Params,
}

fn series_report(lhs: Series<Rational>, rhs: Series<Rational>, m: i64, prec: i64) -> Report<Series<Rational>> {
    let equal = lhs.agrees_with(&rhs);
    Report { lhs, rhs, equal, params: Params { m, n: None, prec: Some(prec) } }
}

/// `Σ_{k<prec} C(mk, k) u^k`.
pub fn binomial_sum(m: i64, prec: i64) -> Result<Series<Rational>> {
    let coeffs = (0..prec).map(|k| binomial(m * k, k)).collect::<Result<Vec<_>>>()?;
    Ok(Series::from_poly(coeffs, prec))
}

/// `Σ_{k≥0} C(mk, k) u^k = 1 / (1 − m + m·B^{−1})`.
pub fn gkp561_check(m: i64, prec: i64) -> Result<Report<Series<Rational>>> {
    let b = gbs_series(m, prec)?.series;
    let denom = Series::constant(int(1 - m), prec).add(&b.inverse()?.scale(&int(m)));
    let rhs = denom.inverse()?;
    Ok(series_report(binomial_sum(m, prec)?, rhs, m, prec))
}

/// The three forms of the logarithmic identity, each a series in `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogIdentityReport {
    /// `L(u(w))` against `log(1+w)`, where `L(u) = (1/m) Σ_{k≥1} (1/k) C(mk,k) u^k`.
    pub log: Report<Series<Rational>>,
    /// `L'(u(w))` against `(1+w)^{m+1} / ((1+w−wm)(1+w))`.
    pub differentiated: Report<Series<Rational>>,
    /// `Σ_{k≥0} C(mk,k) u(w)^k` against `(1+w)/(1+w−wm)`.
    pub multiplied: Report<Series<Rational>>,
}

impl LogIdentityReport {
    pub fn all_equal(&self) -> bool {
        self.log.equal && self.differentiated.equal && self.multiplied.equal
    }
}

/// `w / (1+w)^m`.
pub fn u_of_w(m: i64, prec: i64) -> Result<Series<Rational>> {
    let one_plus_w = Series::from_poly(alloc::vec![int(1), int(1)], prec);
    Ok(Series::monomial(int(1), 1, prec).mul(&one_plus_w.pow(-m)?).truncate(prec))
}

pub fn log_identity_check(m: i64, prec: i64) -> Result<LogIdentityReport> {
    if m < 1 {
        return Err(Error::InvalidArgument("the log identity is checked for m >= 1 only"));
    }
    if prec < 1 {
        return Err(Error::InvalidArgument("precision must be at least 1"));
    }
    let mq = int(m);
    let u = u_of_w(m, prec)?;
    let one_plus_w = Series::from_poly(alloc::vec![int(1), int(1)], prec);
    let w = Series::monomial(int(1), 1, prec);
    let base = one_plus_w.sub(&w.scale(&mq));

    let mut l = Vec::with_capacity(prec as usize);
    let mut dl = Vec::with_capacity(prec as usize);
    l.push(Rational::zero());
    for k in 1..=prec {
        let c = binomial(m * k, k)? / &mq;
        if k < prec {
            l.push(&c / int(k));
        }
        dl.push(c);
    }
    let l = Series::from_poly(l, prec);
    let dl = Series::from_poly(dl, prec);

    let log = series_report(l.compose(&u)?, w.log1p()?, m, prec);

    let rhs = one_plus_w.pow(m + 1)?.div(&base.mul(&one_plus_w))?;
    let differentiated = series_report(dl.compose(&u)?, rhs, m, prec);

    let rhs = one_plus_w.div(&base)?;
    let multiplied = series_report(binomial_sum(m, prec)?.compose(&u)?, rhs, m, prec);

    Ok(LogIdentityReport { log, differentiated, multiplied })
}

/// The right-hand side of the identity for `H_n`.
pub fn harmonic_rhs(m: i64, n: u64) -> Result<Rational> {
    let n = n as i64;
    let mut total = Rational::zero();
    for k in 1..=n {
        let term = binomial(m * k, k)? * binomial(n + (m - 1) * k, n - k)? / int(k);
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total / int(m))
}

pub fn harmonic_identity_check(m: i64, n: u64) -> Result<Report<Rational>> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument("need m >= 1 and n >= 1"));
    }
    let lhs = harmonic(n);
    let rhs = harmonic_rhs(m, n)?;
    let equal = lhs == rhs;
    Ok(Report { lhs, rhs, equal, params: Params { m, n: Some(n), prec: None } })
}

/// `S(z) = Σ_{n≥1} H_n z^n` three ways, mod `z^prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicGfReport {
    /// Coefficientwise from the right-hand side of the identity.
    pub double_sum: Series<Rational>,
    /// `−log(1−z)/(1−z)`, built as `−log(1+w)/(1−z)` at `w = −z`.
    pub closed_form: Series<Rational>,
    pub harmonic_numbers: Series<Rational>,
    pub equal: bool,
    pub params: Params,
}

pub fn harmonic_gf_check(m: i64, prec: i64) -> Result<HarmonicGfReport> {
    if m < 1 {
        return Err(Error::InvalidArgument("need m >= 1"));
    }
    if prec < 2 {
        return Err(Error::InvalidArgument("precision must be at least 2"));
    }
    let mut double_sum = alloc::vec![Rational::zero()];
    let mut harmonic_numbers = alloc::vec![Rational::zero()];
    for n in 1..prec as u64 {
        double_sum.push(harmonic_rhs(m, n)?);
        harmonic_numbers.push(harmonic(n));
    }
    let double_sum = Series::from_poly(double_sum, prec);
    let harmonic_numbers = Series::from_poly(harmonic_numbers, prec);

    let log_w = Series::monomial(int(1), 1, prec).log1p()?;
    let one_minus_z = Series::from_poly(alloc::vec![Rational::one(), int(-1)], prec);
    let closed_form = log_w.reflect().neg().div(&one_minus_z)?;

    let equal = double_sum.agrees_with(&closed_form) && double_sum.agrees_with(&harmonic_numbers);
    Ok(HarmonicGfReport {
        double_sum,
        closed_form,
        harmonic_numbers,
        equal,
        params: Params { m, n: None, prec: Some(prec) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(3), rat(11, 6));
        assert_eq!(harmonic(5), rat(137, 60));
    }

    #[test]
    fn small_binomial_series() {
        let b = gbs_series(0, 4).unwrap().series;
        assert_eq!(b.coeff_range(0, 4).unwrap(), ints(&[1, 1, 0, 0]));
        let b = gbs_series(1, 5).unwrap().series;
        assert_eq!(b.coeff_range(0, 5).unwrap(), ints(&[1; 5]));
        let b = gbs_series(2, 5).unwrap();
        assert_eq!(b.series.coeff_range(0, 5).unwrap(), ints(&[1, 1, 2, 5, 14]));
        assert!(b.residual().unwrap().is_zero());
    }

    #[test]
    fn negative_parameter() {
        // B = 1 + u/B: B² − B − u = 0
        let b = gbs_series(-1, 6).unwrap();
        assert!(b.residual().unwrap().is_zero());
        assert_eq!(b.series.coeff_range(0, 6).unwrap(), ints(&[1, 1, -1, 2, -5, 14]));
    }

    #[test]
    fn gkp_identity() {
        let r = gkp561_check(2, 10).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs.coeff_range(0, 5).unwrap(), ints(&[1, 2, 6, 20, 70]));
        assert!(gkp561_check(5, 30).unwrap().equal);
        let r = gkp561_check(7, 1).unwrap();
        assert_eq!((r.lhs.coeff(0).unwrap(), r.rhs.coeff(0).unwrap()), (int(1), int(1)));
    }

    #[test]
    fn log_identity_layers() {
        for (m, prec) in [(1, 8), (2, 12), (4, 20)] {
            let r = log_identity_check(m, prec).unwrap();
            assert!(r.all_equal(), "m = {m}");
            assert_eq!(r.log.lhs.prec(), prec);
        }
        assert!(log_identity_check(0, 5).is_err());
    }

    #[test]
    fn harmonic_identity_examples() {
        let r = harmonic_identity_check(1, 4).unwrap();
        assert!(r.equal);
        assert_eq!(r.rhs, rat(25, 12));
        let r = harmonic_identity_check(2, 2).unwrap();
        assert_eq!(r.rhs, rat(3, 2));
        assert!(harmonic_identity_check(3, 25).unwrap().equal);
    }

    #[test]
    fn generating_function() {
        let r = harmonic_gf_check(2, 5).unwrap();
        assert!(r.equal);
        assert_eq!(r.double_sum.coeff_range(1, 5).unwrap(), vec![int(1), rat(3, 2), rat(11, 6), rat(25, 12)]);
        let r = harmonic_gf_check(3, 2).unwrap();
        assert_eq!(r.closed_form.coeff(1).unwrap(), int(1));
        assert!(harmonic_gf_check(4, 30).unwrap().equal);
    }
}
