//! Graded exterior algebra of forms and polyvectors over a chart.
//!
//! Wedge monomials are stored as bitmasks over the chart's generators in
//! declaration order, with sign normalization folded into the coefficients.
//! Contraction with a decomposable polyvector `X₁∧…∧X_p` acts as
//! `ι_{X_p}∘…∘ι_{X₁}`; this is the convention singled out by the spinor-line
//! normalization test in `gca`.

use crate::chart::{Chart, VarKind};
use crate::error::CoreError;
use crate::poly::Poly;
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type WedgeMask = u64;

/// Sign of merging two disjoint ascending generator sets: (−1)^inversions.
fn merge_sign(a: WedgeMask, b: WedgeMask) -> i32 {
    // Count pairs (x ∈ a, y ∈ b) with x > y.
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        inv += (a >> (y + 1)).count_ones();
        bb &= bb - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of removing generator `v` from ascending set `mask`: (−1)^{#below}.
fn removal_sign(mask: WedgeMask, v: u32) -> i32 {
    let below = (mask & ((1u64 << v) - 1)).count_ones();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Shared graded container for forms (over `d`-generators) and polyvectors
/// (over `∂`-generators); the algebra is identical, only the basis differs.
#[derive(Clone, PartialEq, Debug)]
struct Graded {
    chart: Arc<Chart>,
    terms: BTreeMap<WedgeMask, Poly>,
}

impl Graded {
    fn zero(chart: &Arc<Chart>) -> Self {
        Graded {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, mask: WedgeMask, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&p).expect("same chart");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add(&self, other: &Graded) -> Result<Graded, CoreError> {
        Chart::same(&self.chart, &other.chart)?;
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, p.clone());
        }
        Ok(out)
    }

    fn neg(&self) -> Graded {
        Graded {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, p)| (*m, p.neg())).collect(),
        }
    }

    fn scale(&self, c: &GaussRat) -> Graded {
        let mut out = Graded::zero(&self.chart);
        for (m, p) in &self.terms {
            out.add_term(*m, p.scale(c));
        }
        out
    }

    fn scale_poly(&self, p: &Poly) -> Result<Graded, CoreError> {
        let mut out = Graded::zero(&self.chart);
        for (m, q) in &self.terms {
            out.add_term(*m, q.mul(p)?);
        }
        Ok(out)
    }

    fn wedge(&self, other: &Graded) -> Result<Graded, CoreError> {
        Chart::same(&self.chart, &other.chart)?;
        let mut out = Graded::zero(&self.chart);
        for (m1, p1) in &self.terms {
            for (m2, p2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let sign = merge_sign(*m1, *m2);
                let prod = p1.mul(p2)?;
                out.add_term(*m1 | *m2, if sign < 0 { prod.neg() } else { prod });
            }
        }
        Ok(out)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| m.count_ones()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn component(&self, degree: u32) -> Graded {
        Graded {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == degree)
                .map(|(m, p)| (*m, p.clone()))
                .collect(),
        }
    }

    fn conjugate(&self) -> Graded {
        // Swap z ↔ z̄ generator bits (adjacent pairs) and conjugate coefficients.
        let chart = &self.chart;
        let mut out = Graded::zero(chart);
        for (m, p) in &self.terms {
            let mut new_mask: WedgeMask = 0;
            let mut sign = 1i32;
            // Rebuild the mask generator by generator; adjacent swaps within
            // one term commute past all other generators with a sign we track
            // by re-sorting: collect target indices then count inversions.
            let mut targets: Vec<u32> = Vec::new();
            let mut mm = *m;
            while mm != 0 {
                let v = mm.trailing_zeros();
                targets.push(chart.conj_var(v as usize) as u32);
                mm &= mm - 1;
            }
            // Count inversions of the target sequence (bubble count).
            for i in 0..targets.len() {
                for j in (i + 1)..targets.len() {
                    if targets[i] > targets[j] {
                        sign = -sign;
                    }
                }
            }
            for t in targets {
                new_mask |= 1u64 << t;
            }
            let coeff = p.conjugate();
            out.add_term(new_mask, if sign < 0 { coeff.neg() } else { coeff });
        }
        out
    }

    fn eval_mask(&self, point: &[GaussRat]) -> Result<BTreeMap<WedgeMask, GaussRat>, CoreError> {
        let mut out = BTreeMap::new();
        for (m, p) in &self.terms {
            let v = p.eval(point)?;
            if !v.is_zero() {
                out.insert(*m, v);
            }
        }
        Ok(out)
    }
}

/// A differential form with polynomial coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Form(Graded);

/// A polyvector field with polynomial coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyVector(Graded);

impl Form {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        Form(Graded::zero(chart))
    }

    pub fn scalar(p: Poly) -> Self {
        let mut g = Graded::zero(p.chart());
        g.add_term(0, p);
        Form(g)
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Form::scalar(Poly::one(chart))
    }

    /// The coordinate differential `d(var)`.
    pub fn d_var(chart: &Arc<Chart>, var: usize) -> Self {
        let mut g = Graded::zero(chart);
        g.add_term(1u64 << var, Poly::one(chart));
        Form(g)
    }

    pub fn from_terms(
        chart: &Arc<Chart>,
        terms: impl IntoIterator<Item = (WedgeMask, Poly)>,
    ) -> Self {
        let mut g = Graded::zero(chart);
        for (m, p) in terms {
            g.add_term(m, p);
        }
        Form(g)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.0.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMask, &Poly)> {
        self.0.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.degrees()
    }

    /// Homogeneous degree if the form is homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let ds = self.degrees();
        match ds.len() {
            0 => Some(0),
            1 => Some(ds[0]),
            _ => None,
        }
    }

    pub fn component(&self, degree: u32) -> Form {
        Form(self.0.component(degree))
    }

    pub fn top_component(&self) -> Form {
        self.component(self.chart().nvars() as u32)
    }

    pub fn add(&self, other: &Form) -> Result<Form, CoreError> {
        Ok(Form(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Form) -> Result<Form, CoreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form(self.0.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> Form {
        Form(self.0.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> Result<Form, CoreError> {
        Ok(Form(self.0.scale_poly(p)?))
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, CoreError> {
        Ok(Form(self.0.wedge(&other.0)?))
    }

    pub fn conjugate(&self) -> Form {
        Form(self.0.conjugate())
    }

    /// Exterior derivative; `z` and `z̄` directions are formally independent.
    pub fn ext_d(&self) -> Form {
        let chart = self.chart().clone();
        let mut out = Graded::zero(&chart);
        for (mask, p) in &self.0.terms {
            for v in 0..chart.nvars() {
                let bit = 1u64 << v;
                if mask & bit != 0 {
                    continue;
                }
                let dp = p.partial(v);
                if dp.is_zero() {
                    continue;
                }
                let sign = merge_sign(bit, *mask);
                out.add_term(mask | bit, if sign < 0 { dp.neg() } else { dp });
            }
        }
        Form(out)
    }

    /// Degree-l component scaled by (−1)^{l(l−1)/2}: reversal of wedge factors.
    pub fn transpose(&self) -> Form {
        let chart = self.chart().clone();
        let mut out = Graded::zero(&chart);
        for (mask, p) in &self.0.terms {
            let l = mask.count_ones();
            let flip = (l * l.saturating_sub(1) / 2) % 2 == 1;
            out.add_term(*mask, if flip { p.neg() } else { p.clone() });
        }
        Form(out)
    }

    /// Evaluate all coefficients at a rational point.
    pub fn eval(&self, point: &[GaussRat]) -> Result<BTreeMap<WedgeMask, GaussRat>, CoreError> {
        self.0.eval_mask(point)
    }
}

impl PolyVector {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        PolyVector(Graded::zero(chart))
    }

    /// The coordinate vector field `∂/∂(var)`.
    pub fn d_dvar(chart: &Arc<Chart>, var: usize) -> Self {
        let mut g = Graded::zero(chart);
        g.add_term(1u64 << var, Poly::one(chart));
        PolyVector(g)
    }

    pub fn scalar(p: Poly) -> Self {
        let mut g = Graded::zero(p.chart());
        g.add_term(0, p);
        PolyVector(g)
    }

    pub fn from_terms(
        chart: &Arc<Chart>,
        terms: impl IntoIterator<Item = (WedgeMask, Poly)>,
    ) -> Self {
        let mut g = Graded::zero(chart);
        for (m, p) in terms {
            g.add_term(m, p);
        }
        PolyVector(g)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.0.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMask, &Poly)> {
        self.0.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.degrees()
    }

    pub fn degree(&self) -> Option<u32> {
        let ds = self.degrees();
        match ds.len() {
            0 => Some(0),
            1 => Some(ds[0]),
            _ => None,
        }
    }

    pub fn component(&self, degree: u32) -> PolyVector {
        PolyVector(self.0.component(degree))
    }

    pub fn add(&self, other: &PolyVector) -> Result<PolyVector, CoreError> {
        Ok(PolyVector(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &PolyVector) -> Result<PolyVector, CoreError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyVector {
        PolyVector(self.0.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> PolyVector {
        PolyVector(self.0.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> Result<PolyVector, CoreError> {
        Ok(PolyVector(self.0.scale_poly(p)?))
    }

    pub fn wedge(&self, other: &PolyVector) -> Result<PolyVector, CoreError> {
        Ok(PolyVector(self.0.wedge(&other.0)?))
    }

    pub fn conjugate(&self) -> PolyVector {
        PolyVector(self.0.conjugate())
    }

    /// Coefficient of `∂/∂(var)` in the degree-1 part.
    pub fn coeff_of(&self, var: usize) -> Poly {
        self.0
            .terms
            .get(&(1u64 << var))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.chart()))
    }

    pub fn eval(&self, point: &[GaussRat]) -> Result<BTreeMap<WedgeMask, GaussRat>, CoreError> {
        self.0.eval_mask(point)
    }

    /// Lie bracket of two degree-1 vector fields.
    pub fn lie_bracket(&self, other: &PolyVector) -> Result<PolyVector, CoreError> {
        Chart::same(self.chart(), other.chart())?;
        let chart = self.chart().clone();
        let mut out = PolyVector::zero(&chart);
        for i in 0..chart.nvars() {
            let mut coeff = Poly::zero(&chart);
            for j in 0..chart.nvars() {
                let xj = self.coeff_of(j);
                let yj = other.coeff_of(j);
                if !xj.is_zero() {
                    coeff = coeff.add(&xj.mul(&other.coeff_of(i).partial(j))?)?;
                }
                if !yj.is_zero() {
                    coeff = coeff.sub(&yj.mul(&self.coeff_of(i).partial(j))?)?;
                }
            }
            if !coeff.is_zero() {
                out = out.add(&PolyVector::d_dvar(&chart, i).scale_poly(&coeff)?)?;
            }
        }
        Ok(out)
    }
}

/// Interior product `ι_W α`. A decomposable `W = X₁∧…∧X_p` (stored with
/// ascending generator indices) acts as `ι_{X_p}∘…∘ι_{X_1}`, extended
/// bilinearly; the degree-0 part of `W` acts by multiplication.
pub fn contract(w: &PolyVector, alpha: &Form) -> Result<Form, CoreError> {
    Chart::same(w.chart(), alpha.chart())?;
    let chart = alpha.chart().clone();
    let mut out = Graded::zero(&chart);
    for (wmask, wcoef) in w.terms() {
        for (amask, acoef) in alpha.terms() {
            // Contract generators of wmask in ascending order.
            let mut mask = *amask;
            let mut sign = 1i32;
            let mut ok = true;
            let mut wm = *wmask;
            while wm != 0 {
                let v = wm.trailing_zeros();
                wm &= wm - 1;
                let bit = 1u64 << v;
                if mask & bit == 0 {
                    ok = false;
                    break;
                }
                sign *= removal_sign(mask, v);
                mask &= !bit;
            }
            if !ok {
                continue;
            }
            let prod = wcoef.mul(acoef)?;
            out.add_term(mask, if sign < 0 { prod.neg() } else { prod });
        }
    }
    Ok(Form(out))
}

/// Interior product of a 1-form into a polyvector, `ι_ξ W`, with
/// `ι_ξ(X∧Y) = ξ(X)·Y − ξ(Y)·X` on bivectors; this is the bivector-as-map
/// convention used for `π_J` and holomorphic Poisson tensors.
pub fn contract_covector(xi: &Form, w: &PolyVector) -> Result<PolyVector, CoreError> {
    Chart::same(xi.chart(), w.chart())?;
    if let Some(d) = xi.degree() {
        if d != 1 && !xi.is_zero() {
            return Err(CoreError::DegreeError(format!(
                "contract_covector expects a 1-form, got degree {}",
                d
            )));
        }
    } else {
        return Err(CoreError::DegreeError(
            "contract_covector expects a homogeneous 1-form".to_string(),
        ));
    }
    let chart = w.chart().clone();
    let mut out = Graded::zero(&chart);
    for (xmask, xcoef) in xi.terms() {
        let v = xmask.trailing_zeros();
        for (wmask, wcoef) in w.terms() {
            let bit = 1u64 << v;
            if wmask & bit == 0 {
                continue;
            }
            let sign = removal_sign(*wmask, v);
            let prod = xcoef.mul(wcoef)?;
            out.add_term(wmask & !bit, if sign < 0 { prod.neg() } else { prod });
        }
    }
    Ok(PolyVector(out))
}

/// Cartan Lie derivative along a degree-1 vector field:
/// `L_W = d∘ι_W + ι_W∘d`.
pub fn lie_derivative(w: &PolyVector, alpha: &Form) -> Result<Form, CoreError> {
    let a = contract(w, alpha)?.ext_d();
    let b = contract(w, &alpha.ext_d())?;
    a.add(&b)
}

/// `e^B ∧ ρ` for a 2-form `B` (finite by nilpotency).
pub fn exp_wedge(b: &Form, rho: &Form) -> Result<Form, CoreError> {
    Chart::same(b.chart(), rho.chart())?;
    if !b.is_zero() && b.degree() != Some(2) {
        return Err(CoreError::DegreeError(
            "exponential exponent must be a 2-form".to_string(),
        ));
    }
    let mut out = rho.clone();
    let mut power = rho.clone();
    let mut factorial = GaussRat::one();
    for j in 1..=(rho.chart().nvars() as u32 / 2 + 1) {
        power = b.wedge(&power)?;
        if power.is_zero() {
            break;
        }
        factorial = &factorial * &GaussRat::from_int(j as i64);
        out = out.add(&power.scale(&factorial.inv()))?;
    }
    Ok(out)
}

/// `e^W(ρ) = Σ (ι_W)^j / j! ρ` for a bivector `W`.
pub fn exp_contract(w: &PolyVector, rho: &Form) -> Result<Form, CoreError> {
    Chart::same(w.chart(), rho.chart())?;
    if !w.is_zero() && w.degree() != Some(2) {
        return Err(CoreError::DegreeError(
            "exponential exponent must be a bivector".to_string(),
        ));
    }
    let mut out = rho.clone();
    let mut power = rho.clone();
    let mut factorial = GaussRat::one();
    for j in 1..=(rho.chart().nvars() as u32 / 2 + 1) {
        power = contract(w, &power)?;
        if power.is_zero() {
            break;
        }
        factorial = &factorial * &GaussRat::from_int(j as i64);
        out = out.add(&power.scale(&factorial.inv()))?;
    }
    Ok(out)
}

/// Primitive for a closed form vanishing along the zero section of a
/// coordinate subbundle: `η = ι_V Σ_w α_w / w` where `V` is the Euler vector
/// field of the fiber coordinates and `α_w` the fiber-weight-`w` component
/// (coefficient degree in fiber coordinates plus fiber 1-form generators).
/// Then `dη = α` exactly and `η` vanishes to second order along the base.
pub fn radial_homotopy(alpha: &Form, fiber_vars: &[usize]) -> Result<Form, CoreError> {
    let chart = alpha.chart().clone();
    for &v in fiber_vars {
        if v >= chart.nvars() {
            return Err(CoreError::IndexOutOfRange(v, chart.nvars()));
        }
    }
    let d_alpha = alpha.ext_d();
    if !d_alpha.is_zero() {
        return Err(CoreError::NotClosed(d_alpha.to_string()));
    }
    let fiber_mask: WedgeMask = fiber_vars.iter().fold(0, |m, &v| m | (1u64 << v));
    // Vanishing along the zero section: every coefficient must be in the
    // ideal of the fiber coordinates.
    for (mask, p) in alpha.terms() {
        for (mono, _) in p.terms() {
            if mono.degree_in(fiber_vars) == 0 {
                let term = Form::from_terms(
                    &chart,
                    [(*mask, Poly::from_terms(&chart, [(mono.clone(), GaussRat::one())]))],
                );
                return Err(CoreError::NotVanishingOnBase(term.to_string()));
            }
        }
    }
    // Split by fiber weight and scale each component by 1/w.
    let mut scaled = Graded::zero(&chart);
    for (mask, p) in alpha.terms() {
        let gen_weight = (mask & fiber_mask).count_ones();
        for (mono, c) in p.terms() {
            let w = gen_weight + mono.degree_in(fiber_vars);
            if w == 0 {
                // Unreachable once the vanishing check passed; kept as a guard.
                return Err(CoreError::ZeroWeightComponent(
                    crate::poly::render_monomial(&chart, mono),
                ));
            }
            let coeff = c * &GaussRat::from_ratio(1, w as i64);
            scaled.add_term(*mask, Poly::from_terms(&chart, [(mono.clone(), coeff)]));
        }
    }
    // Euler vector field of the fiber.
    let mut euler = PolyVector::zero(&chart);
    for &v in fiber_vars {
        euler = euler.add(&PolyVector::d_dvar(&chart, v).scale_poly(&Poly::var(&chart, v))?)?;
    }
    contract(&euler, &Form(scaled))
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_graded(&self.0, "d"))
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_graded(&self.0, "dd"))
    }
}

fn render_graded(g: &Graded, prefix: &str) -> String {
    if g.is_zero() {
        return "0".to_string();
    }
    let chart = &g.chart;
    let mut pieces: Vec<String> = Vec::new();
    for (mask, p) in &g.terms {
        let mut gens: Vec<String> = Vec::new();
        let mut mm = *mask;
        while mm != 0 {
            let v = mm.trailing_zeros();
            gens.push(format!("{}{}", prefix, chart.var_name(v as usize)));
            mm &= mm - 1;
        }
        let gen_str = gens.join("*");
        let piece = if gen_str.is_empty() {
            format!("{}", p)
        } else if p == &Poly::one(chart) {
            gen_str
        } else if p == &Poly::one(chart).neg() {
            format!("-{}", gen_str)
        } else if p.n_terms() == 1 {
            format!("{}*{}", p, gen_str)
        } else {
            format!("({})*{}", p, gen_str)
        };
        pieces.push(piece);
    }
    let mut out = String::new();
    for (idx, piece) in pieces.iter().enumerate() {
        if idx == 0 {
            out.push_str(piece);
        } else if let Some(stripped) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

/// True for a VarKind::Holo bitmask-only polyvector: used by blow-up code.
pub fn is_holo_bivector(w: &PolyVector) -> bool {
    w.terms().all(|(mask, p)| {
        p.is_holomorphic()
            && mask.count_ones() == 2
            && {
                let mut ok = true;
                let mut mm = *mask;
                while mm != 0 {
                    let v = mm.trailing_zeros() as usize;
                    if w.chart().kind(v) != VarKind::Holo {
                        ok = false;
                    }
                    mm &= mm - 1;
                }
                ok
            }
    })
}
