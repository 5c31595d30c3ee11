//! Sparse multivariate polynomials over Gaussian rationals on a chart.
//!
//! `z^j` and `z̄^j` are independent generators (Wirtinger convention);
//! conjugation is the ring involution swapping them and conjugating
//! coefficients.

use crate::chart::Chart;
use crate::error::CoreError;
use crate::ratfn::RationalFn;
use crate::scalar::GaussRat;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector aligned with the chart's generators, ordered graded
/// lexicographically (total degree first, then lexicographic in declaration
/// order). Only canonicalization depends on this order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.0[v]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with Gaussian-rational coefficients. Zero coefficients are
/// never stored; the zero polynomial has an empty term map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    chart: Arc<Chart>,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        Poly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Arc<Chart>, c: GaussRat) -> Self {
        let mut p = Poly::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.nvars()), c);
        }
        p
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Poly::constant(chart, GaussRat::one())
    }

    pub fn var(chart: &Arc<Chart>, v: usize) -> Self {
        let mut p = Poly::zero(chart);
        p.terms
            .insert(Monomial::var(chart.nvars(), v), GaussRat::one());
        p
    }

    pub fn from_terms(
        chart: &Arc<Chart>,
        terms: impl IntoIterator<Item = (Monomial, GaussRat)>,
    ) -> Self {
        let mut p = Poly::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant-term coefficient.
    pub fn constant_coeff(&self) -> GaussRat {
        self.terms
            .get(&Monomial::one(self.chart.nvars()))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, CoreError> {
        Chart::same(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, CoreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, CoreError> {
        Chart::same(&self.chart, &other.chart)?;
        let mut out = Poly::zero(&self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.chart);
        for _ in 0..n {
            out = out.mul(self).expect("same chart");
        }
        out
    }

    /// Formal partial derivative; `z` and `z̄` are independent generators.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// The ring involution: swap `z^j ↔ z̄^j` and conjugate coefficients.
    pub fn conjugate(&self) -> Poly {
        let chart = &self.chart;
        let mut out = Poly::zero(chart);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; chart.nvars()];
            for (v, &exp) in m.0.iter().enumerate() {
                e[chart.conj_var(v)] += exp;
            }
            out.add_term(Monomial(e), c.conj());
        }
        out
    }

    /// True when no monomial involves an anti-holomorphic generator.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| {
            m.0.iter().enumerate().all(|(v, &e)| {
                e == 0 || self.chart.kind(v) != crate::chart::VarKind::AntiHolo
            })
        })
    }

    /// Evaluate at a point given as one Gaussian rational per generator.
    pub fn eval(&self, point: &[GaussRat]) -> Result<GaussRat, CoreError> {
        if point.len() != self.chart.nvars() {
            return Err(CoreError::PointLength(point.len(), self.chart.nvars()));
        }
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &point[v];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitute polynomials for generators. Unlisted generators stay fixed.
    pub fn substitute_poly(
        &self,
        map: &BTreeMap<usize, Poly>,
        target: &Arc<Chart>,
    ) -> Result<Poly, CoreError> {
        for p in map.values() {
            Chart::same(p.chart(), target)?;
        }
        let mut images: Vec<Poly> = Vec::with_capacity(self.chart.nvars());
        for v in 0..self.chart.nvars() {
            match map.get(&v) {
                Some(p) => images.push(p.clone()),
                None => {
                    // Generator must exist (same name) in the target chart.
                    let name = self.chart.var_name(v);
                    match target.lookup(name) {
                        Some(tv) => images.push(Poly::var(target, tv)),
                        None => {
                            return Err(CoreError::InvalidInput(format!(
                                "substitution target chart lacks coordinate `{}`",
                                name
                            )))
                        }
                    }
                }
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[v].pow(e))?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Substitute rational functions for generators.
    pub fn substitute(
        &self,
        map: &BTreeMap<usize, RationalFn>,
        target: &Arc<Chart>,
    ) -> Result<RationalFn, CoreError> {
        let mut images: Vec<RationalFn> = Vec::with_capacity(self.chart.nvars());
        for v in 0..self.chart.nvars() {
            match map.get(&v) {
                Some(r) => {
                    Chart::same(r.num().chart(), target)?;
                    images.push(r.clone());
                }
                None => {
                    let name = self.chart.var_name(v);
                    match target.lookup(name) {
                        Some(tv) => images.push(RationalFn::from_poly(Poly::var(target, tv))?),
                        None => {
                            return Err(CoreError::InvalidInput(format!(
                                "substitution target chart lacks coordinate `{}`",
                                name
                            )))
                        }
                    }
                }
            }
        }
        let mut out = RationalFn::zero(target);
        for (m, c) in &self.terms {
            let mut t = RationalFn::from_poly(Poly::constant(target, c.clone()))?;
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[v])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Exact division: returns `q` with `self = q·g`, or the leading monomial
    /// of the first irreducible remainder as a `NotDivisible` witness.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly, CoreError> {
        Chart::same(&self.chart, &g.chart)?;
        if g.is_zero() {
            return Err(CoreError::ZeroDivisor);
        }
        let (g_lm, g_lc) = g.leading().expect("nonzero divisor");
        let g_lm = g_lm.clone();
        let g_lc = g_lc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.chart);
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !g_lm.divides(&lm) {
                return Err(CoreError::NotDivisible {
                    witness: render_monomial(&self.chart, &lm),
                });
            }
            let qm = lm.div(&g_lm);
            let qc = &lc / &g_lc;
            let mut step = Poly::zero(&self.chart);
            step.add_term(qm, qc);
            quot = quot.add(&step)?;
            rem = rem.sub(&step.mul(g)?)?;
        }
        Ok(quot)
    }
}

pub fn render_monomial(chart: &Arc<Chart>, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.var_name(v).to_string()),
            _ => parts.push(format!("{}^{}", chart.var_name(v), e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering: graded-lex descending, `+`-joined with signs
    /// folded into coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(&self.chart, m);
            let cs = c.to_string();
            let piece = if mono == "1" {
                cs
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{}", mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            if first {
                write!(f, "{}", piece)?;
                first = false;
            } else if let Some(stripped) = piece.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", piece)?;
            }
        }
        Ok(())
    }
}
