//! Exact coefficient fields: the rationals and a single quadratic extension `Q(√d)`.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient field for truncated series.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `a + b·√d` with `d` squarefree.
///
/// `d == 0` marks an element whose radical is not yet fixed; such an element
/// always has `b == 0` and adopts the `d` of whatever it is combined with.
/// Combining two elements with different nonzero radicals is a logic error and panics.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            return QuadExt { a, b, d };
        }
        assert!(d >= 2 && is_squarefree(d), "radicand {d} must be squarefree and at least 2");
        QuadExt { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 0 }
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Radicand, or `None` when the element is rational.
    pub fn radicand(&self) -> Option<u64> {
        if self.b.is_zero() {
            None
        } else {
            Some(self.d)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(self.d as i64) * &self.b * &self.b
    }

    fn joined(&self, other: &Self) -> u64 {
        match (self.b.is_zero() || self.d == 0, other.b.is_zero() || other.d == 0) {
            (true, true) => self.d.max(other.d),
            (true, false) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing elements of different quadratic extensions");
                self.d
            }
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let radical = if self.b.is_one() {
            alloc::format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            alloc::format!("-sqrt({})", self.d)
        } else {
            alloc::format!("{}*sqrt({})", self.b, self.d)
        };
        if self.a.is_zero() {
            f.write_str(&radical)
        } else if let Some(rest) = radical.strip_prefix('-') {
            write!(f, "({} - {})", self.a, rest)
        } else {
            write!(f, "({} + {})", self.a, radical)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.joined(&rhs);
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b, d }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.joined(&rhs);
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b, d }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.joined(&rhs);
        let a = &self.a * &rhs.a + int(d as i64) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt { a, b, d }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv().expect("division by zero in Q(sqrt d)")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
}

impl Field for QuadExt {
    fn from_rational(q: &Rational) -> Self {
        QuadExt::rational(q.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // nonzero norm: d is squarefree and not a square
        let n = self.norm();
        Some(QuadExt { a: &self.a / &n, b: -(&self.b / &n), d: self.d })
    }
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Writes `√q = k·√d` with `k` rational and `d` squarefree (`d == 1` when `q` is a square).
///
/// Returns `None` for negative `q` or when the radicand does not fit in a `u64`.
pub fn sqrt_rational(q: &Rational) -> Option<(Rational, u64)> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some((Rational::zero(), 1));
    }
    // √(p/r) = √(p·r) / r
    let pr = (q.numer() * q.denom()).to_u64()?;
    let (square, free) = split_square(pr);
    let k = Rational::new(BigInt::from(square), q.denom().clone());
    Some((k, free))
}

/// `n = s²·f` with `f` squarefree.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    (s, f * n)
}

/// Generalized binomial coefficient `n(n−1)…(n−k+1)/k!`, valid for any integer `n`.
pub fn binomial(n: i64, k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(Error::InvalidArgument("binomial: lower index must be non-negative"));
    }
    if n >= 0 && n < k {
        return Ok(Rational::zero());
    }
    let mut num = BigInt::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigUint::from((i + 1) as u64);
    }
    Ok(Rational::new(num, BigInt::from(den)))
}

/// Integer binomial for non-negative arguments; `0` when `k > n`.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
