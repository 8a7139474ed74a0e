//! Series in fractional powers `z^(k/r)`, stored as a Laurent series in `w = z^(1/r)`.

use core::fmt;

use num_integer::Integer;

use crate::error::Result;
use crate::scalar::{Field, Rational};
use crate::series::{power_text, write_terms, Series};

#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries<F> {
    ramification: u32,
    body: Series<F>,
}

impl<F: Field> PuiseuxSeries<F> {
    /// `body(z^(1/ramification))`, reduced to the smallest ramification.
    ///
    /// Reducing the ramification can round the precision down to the next
    /// representable exponent.
    pub fn new(ramification: u32, body: Series<F>) -> Self {
        assert!(ramification >= 1, "ramification must be positive");
        let mut s = PuiseuxSeries { ramification, body };
        s.reduce();
        s
    }

    pub fn from_laurent(body: Series<F>) -> Self {
        PuiseuxSeries { ramification: 1, body }
    }

    fn reduce(&mut self) {
        let r = self.ramification as i64;
        let g = self.body.terms().fold(r, |g, (e, _)| g.gcd(&e));
        if g <= 1 {
            return;
        }
        let prec = Integer::div_floor(&self.body.prec(), &g);
        let start = Integer::div_floor(&self.body.valuation(), &g).min(prec);
        let mut coeffs = alloc::vec![F::zero(); (prec - start).max(0) as usize];
        for (e, c) in self.body.terms() {
            let k = e / g;
            if k < prec {
                coeffs[(k - start) as usize] = c.clone();
            }
        }
        self.ramification = (r / g) as u32;
        self.body = Series::new(start, coeffs, prec);
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    /// The underlying series in `w = z^(1/r)`.
    pub fn body(&self) -> &Series<F> {
        &self.body
    }

    /// Leading exponent as a rational number of `z`.
    pub fn valuation(&self) -> Rational {
        Rational::new(self.body.valuation().into(), (self.ramification as i64).into())
    }

    /// Truncation order as a rational exponent of `z`.
    pub fn prec(&self) -> Rational {
        Rational::new(self.body.prec().into(), (self.ramification as i64).into())
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient of `z^exponent`; zero for exponents not of the form `k/r`.
    pub fn coeff(&self, exponent: &Rational) -> Result<F> {
        let scaled = exponent * Rational::from_integer((self.ramification as i64).into());
        if !scaled.is_integer() {
            let top = self.prec();
            if *exponent >= top {
                return Err(crate::error::Error::InvalidArgument("coefficient requested beyond precision"));
            }
            return Ok(F::zero());
        }
        let e: i64 = num_traits::ToPrimitive::to_i64(&scaled.to_integer()).expect("exponent out of range");
        self.body.coeff(e)
    }

    /// Re-expresses the series with ramification `self.r · k`.
    pub fn lift(&self, k: u32) -> Series<F> {
        if k == 1 {
            return self.body.clone();
        }
        let k = k as i64;
        let start = self.body.valuation() * k;
        let prec = self.body.prec() * k;
        let mut coeffs = alloc::vec![F::zero(); (prec - start).max(0) as usize];
        for (e, c) in self.body.terms() {
            coeffs[(e * k - start) as usize] = c.clone();
        }
        Series::new(start, coeffs, prec)
    }

    fn common(&self, rhs: &Self) -> (u32, Series<F>, Series<F>) {
        let r = (self.ramification as u64).lcm(&(rhs.ramification as u64)) as u32;
        (r, self.lift(r / self.ramification), rhs.lift(r / rhs.ramification))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (r, a, b) = self.common(rhs);
        PuiseuxSeries::new(r, a.add(&b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (r, a, b) = self.common(rhs);
        PuiseuxSeries::new(r, a.sub(&b))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { ramification: self.ramification, body: self.body.neg() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (r, a, b) = self.common(rhs);
        PuiseuxSeries::new(r, a.mul(&b))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let (r, a, b) = self.common(rhs);
        Ok(PuiseuxSeries::new(r, a.div(&b)?))
    }

    pub fn scale(&self, c: &F) -> Self {
        PuiseuxSeries::new(self.ramification, self.body.scale(c))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> PuiseuxSeries<G> {
        PuiseuxSeries::new(self.ramification, self.body.map(f))
    }

    /// Agreement up to the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<F: Field> fmt::Display for PuiseuxSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ramification;
        let big_o = {
            let p = power_text("z", self.body.prec(), r);
            alloc::format!("O({})", if p.is_empty() { "1".into() } else { p })
        };
        write_terms(f, self.body.terms().map(|(e, c)| (power_text("z", e, r), c)), &big_o)
    }
}
