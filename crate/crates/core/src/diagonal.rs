//! Diagonals `Σ f_{n,n} z^n` of rational functions `F(x, y) = N/D`.
//!
//! Substituting `x = z·t`, `y = 1/t` and dividing by `t` turns the diagonal
//! into the constant term in `t`, which equals the sum of residues of
//! `F(zt, 1/t)/t` at the poles `t = s(z)` that stay bounded as `z → 0`. At a
//! simple pole the residue is `N(s, z) / ∂_t D(s, z)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::branch::{classify_bounded, Classification};
use crate::error::{Error, Result};
use crate::poly::{Bipoly, PolyInTOverZ};
use crate::scalar::Rational;
use crate::series::Series;

/// `F(x, y) = numerator / denominator`; polynomials have rows indexed by the power of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBivariate {
    numerator: Bipoly,
    denominator: Bipoly,
}

impl RationalBivariate {
    /// Fails unless the denominator has a nonzero constant term.
    pub fn new(numerator: Bipoly, denominator: Bipoly) -> Result<Self> {
        if denominator.coeff(0, 0).is_zero() {
            return Err(Error::InvalidArgument("denominator must have a nonzero constant term"));
        }
        Ok(RationalBivariate { numerator, denominator })
    }

    pub fn numerator(&self) -> &Bipoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Bipoly {
        &self.denominator
    }
}

/// `z^z_power · numerator / denominator = F(zt, 1/t) / t`, both sides polynomials in `(t, z)`.
///
/// Common powers of `t` are cancelled and the `z`-content of both
/// polynomials is moved into `z_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalProblem {
    pub numerator: PolyInTOverZ,
    pub denominator: PolyInTOverZ,
    pub z_power: i64,
}

fn substitute(p: &Bipoly, y_degree: usize) -> Bipoly {
    // x^a y^b  ↦  z^a t^(a - b + y_degree)
    Bipoly::from_terms(p.terms().map(|(a, b, c)| (a + y_degree - b, a, c.clone())))
}

pub fn substitute_diagonal(f: &RationalBivariate) -> DiagonalProblem {
    let dn = f.numerator.inner_degree();
    let dd = f.denominator.inner_degree();
    let mut num = substitute(&f.numerator, dn);
    let mut den = substitute(&f.denominator, dd);
    // remaining factor t^(dd - dn - 1)
    let e = dd as i64 - dn as i64 - 1;
    if e >= 0 {
        num = num.mul_outer_power(e as usize);
    } else {
        den = den.mul_outer_power((-e) as usize);
    }
    let common_t = num.outer_content().min(den.outer_content());
    if common_t > 0 && !num.is_zero() {
        num = Bipoly::new(num.rows()[common_t..].to_vec());
        den = Bipoly::new(den.rows()[common_t..].to_vec());
    }
    let kd = den.inner_content();
    let kn = if num.is_zero() { 0 } else { num.inner_content() };
    DiagonalProblem {
        numerator: num.div_inner_power(kn),
        denominator: den.div_inner_power(kd),
        z_power: kn as i64 - kd as i64,
    }
}

/// Residue sum over the bounded branches of `problem`, known mod `z^prec`,
/// together with the branch classification it used.
pub fn residue_sum(problem: &DiagonalProblem, prec: i64) -> Result<(Series<Rational>, Classification)> {
    let lift_prec = (prec - problem.z_power).max(1);
    let classes = classify_bounded(&problem.denominator, lift_prec)?;
    let dt = problem.denominator.derivative();
    let mut total = Series::zero(lift_prec);
    for branch in &classes.bounded {
        let s = &branch.expansion;
        let d = dt.eval_series(s);
        if d.is_zero() {
            return Err(Error::ResidueUndefined);
        }
        let n = problem.numerator.eval_series(s);
        total = total.add(&n.div(&d)?);
    }
    Ok((total.shift(problem.z_power).truncate(prec), classes))
}

/// The diagonal of `f`, known mod `z^prec`.
pub fn diagonal_gf(f: &RationalBivariate, prec: i64) -> Result<Series<Rational>> {
    residue_sum(&substitute_diagonal(f), prec).map(|(g, _)| g)
}

/// `f_{k,k}` for `k < count`, by expanding `N/D` as a bivariate power series.
///
/// Independent of the branch machinery: a dense `count × count` grid filled by
/// `G·D = N`, one coefficient at a time.
pub fn diagonal_oracle_terms(f: &RationalBivariate, count: usize) -> Vec<Rational> {
    if count == 0 {
        return Vec::new();
    }
    let n = count;
    let d00 = f.denominator.coeff(0, 0);
    let d_terms: Vec<(usize, usize, Rational)> = f
        .denominator
        .terms()
        .filter(|&(a, b, _)| (a, b) != (0, 0))
        .map(|(a, b, c)| (a, b, c.clone()))
        .collect();
    let mut g = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = f.numerator.coeff(i, j);
            for (a, b, c) in &d_terms {
                if *a <= i && *b <= j {
                    acc -= c * &g[i - a][j - b];
                }
            }
            g[i][j] = acc / &d00;
        }
    }
    (0..n).map(|k| g[k][k].clone()).collect()
}

/// `f_{n,n}`.
pub fn diagonal_oracle(f: &RationalBivariate, n: usize) -> Rational {
    diagonal_oracle_terms(f, n + 1).pop().unwrap()
}
