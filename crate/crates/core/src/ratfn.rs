//! Rational functions `num/den` of polynomials on a chart.
//!
//! Normalization strips the common monomial content and rescales so the
//! denominator's leading coefficient is 1; full multivariate gcd reduction is
//! deliberately out of scope, so equality is decided by cross-multiplication.

use crate::chart::Chart;
use crate::error::CoreError;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoreError> {
        Chart::same(num.chart(), den.chart())?;
        if den.is_zero() {
            return Err(CoreError::DivisionByZeroDenominator);
        }
        let mut r = RationalFn { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(num: Poly) -> Result<Self, CoreError> {
        let den = Poly::one(num.chart());
        RationalFn::new(num, den)
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        RationalFn {
            num: Poly::zero(chart),
            den: Poly::one(chart),
        }
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        RationalFn {
            num: Poly::one(chart),
            den: Poly::one(chart),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.num.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// If the denominator is (a scalar multiple of) 1, return the polynomial.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.is_constant() {
            let c = self.den.constant_coeff();
            Some(self.num.scale(&c.inv()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.chart());
            return;
        }
        // Strip the common monomial content of all terms of num and den.
        let nvars = self.num.chart().nvars();
        let mut content = vec![u32::MAX; nvars];
        for (m, _) in self.num.terms().chain(self.den.terms()) {
            for (v, &e) in m.0.iter().enumerate() {
                content[v] = content[v].min(e);
            }
        }
        if content.iter().any(|&e| e > 0) {
            let shift = Monomial(content);
            let strip = |p: &Poly| {
                Poly::from_terms(
                    p.chart(),
                    p.terms().map(|(m, c)| (m.div(&shift), c.clone())),
                )
            };
            self.num = strip(&self.num);
            self.den = strip(&self.den);
        }
        // Make the denominator's leading coefficient 1.
        let lc = self.den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn add(&self, other: &RationalFn) -> Result<RationalFn, CoreError> {
        let num = self
            .num
            .mul(&other.den)?
            .add(&other.num.mul(&self.den)?)?;
        RationalFn::new(num, self.den.mul(&other.den)?)
    }

    pub fn sub(&self, other: &RationalFn) -> Result<RationalFn, CoreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> Result<RationalFn, CoreError> {
        RationalFn::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, CoreError> {
        if other.is_zero() {
            return Err(CoreError::DivisionByZeroDenominator);
        }
        RationalFn::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    pub fn scale(&self, c: &GaussRat) -> RationalFn {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn conjugate(&self) -> RationalFn {
        let mut r = RationalFn {
            num: self.num.conjugate(),
            den: self.den.conjugate(),
        };
        r.normalize();
        r
    }

    /// Quotient-rule partial derivative.
    pub fn partial(&self, var: usize) -> Result<RationalFn, CoreError> {
        let num = self
            .num
            .partial(var)
            .mul(&self.den)?
            .sub(&self.num.mul(&self.den.partial(var))?)?;
        RationalFn::new(num, self.den.mul(&self.den)?)
    }

    pub fn substitute(
        &self,
        map: &BTreeMap<usize, RationalFn>,
        target: &Arc<Chart>,
    ) -> Result<RationalFn, CoreError> {
        let num = self.num.substitute(map, target)?;
        let den = self.den.substitute(map, target)?;
        if den.is_zero() {
            return Err(CoreError::DivisionByZeroDenominator);
        }
        num.div(&den)
    }

    /// Exact equality via cross-multiplication.
    pub fn eq_rational(&self, other: &RationalFn) -> Result<bool, CoreError> {
        Ok(self.num.mul(&other.den)? == other.num.mul(&self.den)?)
    }

    pub fn eval(&self, point: &[GaussRat]) -> Result<GaussRat, CoreError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(CoreError::DivisionByZeroDenominator);
        }
        Ok(&self.num.eval(point)? / &d)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.eq_rational(other).unwrap_or(false)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            match self.as_poly() {
                Some(p) => write!(f, "{}", p),
                None => write!(f, "({})/({})", self.num, self.den),
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
