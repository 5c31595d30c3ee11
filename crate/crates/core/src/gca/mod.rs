//! Generalized complex linear algebra and calculus on a chart: pairing,
//! Clifford action, Courant bracket, B-transforms, spinor machinery and
//! Dirac-structure conversions.

pub mod image;
pub mod jop;
pub mod pointwise;

pub use image::{image_linear, ImageDirection, LinearMapData};
pub use jop::{standard_structure, JOperator, StandardKind};
pub use pointwise::{annihilator, involutivity_check, type_at_spinor, DiracBasis};

use crate::chart::Chart;
use crate::error::CoreError;
use crate::exterior::{contract, exp_wedge, lie_derivative, Form, PolyVector};
use crate::poly::Poly;
use std::sync::Arc;

/// A section `X + ξ` of `TM ⊕ T*M` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSection {
    vec: PolyVector,
    cov: Form,
}

impl GenSection {
    pub fn new(vec: PolyVector, cov: Form) -> Result<Self, CoreError> {
        Chart::same(vec.chart(), cov.chart())?;
        for d in vec.degrees() {
            if d != 1 {
                return Err(CoreError::DegreeError(
                    "vector part of a generalized section must have degree 1".into(),
                ));
            }
        }
        for d in cov.degrees() {
            if d != 1 {
                return Err(CoreError::DegreeError(
                    "covector part of a generalized section must have degree 1".into(),
                ));
            }
        }
        Ok(GenSection { vec, cov })
    }

    pub fn from_vector(vec: PolyVector) -> Result<Self, CoreError> {
        let cov = Form::zero(vec.chart());
        GenSection::new(vec, cov)
    }

    pub fn from_covector(cov: Form) -> Result<Self, CoreError> {
        let vec = PolyVector::zero(cov.chart());
        GenSection::new(vec, cov)
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        GenSection {
            vec: PolyVector::zero(chart),
            cov: Form::zero(chart),
        }
    }

    pub fn vector(&self) -> &PolyVector {
        &self.vec
    }

    pub fn covector(&self) -> &Form {
        &self.cov
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.vec.chart()
    }

    pub fn add(&self, other: &GenSection) -> Result<GenSection, CoreError> {
        Ok(GenSection {
            vec: self.vec.add(&other.vec)?,
            cov: self.cov.add(&other.cov)?,
        })
    }

    pub fn neg(&self) -> GenSection {
        GenSection {
            vec: self.vec.neg(),
            cov: self.cov.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.cov.is_zero()
    }

    pub fn conjugate(&self) -> GenSection {
        GenSection {
            vec: self.vec.conjugate(),
            cov: self.cov.conjugate(),
        }
    }
}

/// Natural pairing `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn pairing(u: &GenSection, v: &GenSection) -> Result<Poly, CoreError> {
    Chart::same(u.chart(), v.chart())?;
    let a = contract(v.vector(), u.covector())?;
    let b = contract(u.vector(), v.covector())?;
    let sum = a.add(&b)?;
    Ok(sum
        .scale(&crate::scalar::GaussRat::from_ratio(1, 2))
        .scalar_part())
}

/// Clifford action `(X+ξ)·ρ = ι_X ρ + ξ ∧ ρ`.
pub fn clifford_act(u: &GenSection, rho: &Form) -> Result<Form, CoreError> {
    Chart::same(u.chart(), rho.chart())?;
    let a = contract(u.vector(), rho)?;
    let b = u.covector().wedge(rho)?;
    a.add(&b)
}

/// H-twisted Courant bracket (Dorfman form):
/// `⟦X+ξ, Y+η⟧ = [X,Y] + L_X η − ι_Y dξ − ι_Y ι_X H`.
pub fn courant_bracket(
    u: &GenSection,
    v: &GenSection,
    h: &Form,
) -> Result<GenSection, CoreError> {
    Chart::same(u.chart(), v.chart())?;
    Chart::same(u.chart(), h.chart())?;
    if !h.is_zero() {
        if h.degree() != Some(3) {
            return Err(CoreError::DegreeError("H must be a 3-form".into()));
        }
        let dh = h.ext_d();
        if !dh.is_zero() {
            return Err(CoreError::NotClosed(dh.to_string()));
        }
    }
    let vec = u.vector().lie_bracket(v.vector())?;
    let lie = lie_derivative(u.vector(), v.covector())?;
    let d_xi = u.covector().ext_d();
    let term2 = contract(v.vector(), &d_xi)?;
    let term3 = contract(v.vector(), &contract(u.vector(), h)?)?;
    let cov = lie.sub(&term2)?.sub(&term3)?;
    GenSection::new(vec, cov)
}

/// Targets a B-field transform can act on.
pub enum BTarget {
    Section(GenSection),
    Spinor(Form),
}

/// `e^B_*`: sends `X+ξ ↦ X + ξ − ι_X B` and acts on spinors by `e^B ∧`.
pub fn b_transform(b: &Form, target: BTarget) -> Result<BTarget, CoreError> {
    if !b.is_zero() && b.degree() != Some(2) {
        return Err(CoreError::DegreeError("B must be a 2-form".into()));
    }
    match target {
        BTarget::Section(u) => {
            Chart::same(b.chart(), u.chart())?;
            let cov = u.covector().sub(&contract(u.vector(), b)?)?;
            Ok(BTarget::Section(GenSection::new(u.vector().clone(), cov)?))
        }
        BTarget::Spinor(rho) => Ok(BTarget::Spinor(exp_wedge(b, &rho)?)),
    }
}

pub fn b_transform_section(b: &Form, u: &GenSection) -> Result<GenSection, CoreError> {
    match b_transform(b, BTarget::Section(u.clone()))? {
        BTarget::Section(s) => Ok(s),
        _ => unreachable!(),
    }
}

/// Chevalley pairing: the top-degree component of `ρ₁ ∧ ρ₂ᵀ`.
pub fn chevalley(rho1: &Form, rho2: &Form) -> Result<Form, CoreError> {
    Chart::same(rho1.chart(), rho2.chart())?;
    Ok(rho1.wedge(&rho2.transpose())?.top_component())
}

impl Form {
    /// Degree-0 coefficient as a polynomial.
    pub fn scalar_part(&self) -> Poly {
        self.terms()
            .find(|(m, _)| **m == 0)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Poly::zero(self.chart()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn section_dx(chart: &Arc<Chart>, var: usize) -> GenSection {
        GenSection::from_vector(PolyVector::d_dvar(chart, var)).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let ch = Chart::real(2);
        let u = GenSection::new(PolyVector::d_dvar(&ch, 0), Form::d_var(&ch, 0)).unwrap();
        // ⟨∂x + dx, ∂x + dx⟩ = 1
        assert_eq!(pairing(&u, &u).unwrap(), Poly::one(&ch));
        // ⟨∂x, dy⟩ = 0
        let v = GenSection::from_covector(Form::d_var(&ch, 1)).unwrap();
        assert!(pairing(&section_dx(&ch, 0), &v).unwrap().is_zero());
        // ⟨∂x, dx⟩ = ½
        let w = GenSection::from_covector(Form::d_var(&ch, 0)).unwrap();
        assert_eq!(
            pairing(&section_dx(&ch, 0), &w).unwrap(),
            Poly::constant(&ch, GaussRat::from_ratio(1, 2))
        );
    }

    #[test]
    fn clifford_examples() {
        let ch = Chart::real(2);
        let dx = Form::d_var(&ch, 0);
        let dy = Form::d_var(&ch, 1);
        let rho = dx.wedge(&dy).unwrap();
        // (∂x + dy)·(dx∧dy) = dy
        let u = GenSection::new(PolyVector::d_dvar(&ch, 0), dy.clone()).unwrap();
        assert_eq!(clifford_act(&u, &rho).unwrap(), dy);
        // (∂x + dx)·(∂x + dx)·ρ = ρ
        let v = GenSection::new(PolyVector::d_dvar(&ch, 0), dx).unwrap();
        let twice = clifford_act(&v, &clifford_act(&v, &rho).unwrap()).unwrap();
        assert_eq!(twice, rho);
        // 0·ρ = 0
        assert!(clifford_act(&GenSection::zero(&ch), &rho).unwrap().is_zero());
    }

    #[test]
    fn courant_examples() {
        let ch = Chart::real(3);
        let dx = section_dx(&ch, 0);
        let dy = section_dx(&ch, 1);
        let zero_h = Form::zero(&ch);
        // ⟦∂x, ∂y⟧ = 0 with H = 0
        assert!(courant_bracket(&dx, &dy, &zero_h).unwrap().is_zero());
        // ⟦∂x, ∂y⟧ with H = dx∧dy∧dz gives −dz
        let h = Form::d_var(&ch, 0)
            .wedge(&Form::d_var(&ch, 1))
            .unwrap()
            .wedge(&Form::d_var(&ch, 2))
            .unwrap();
        let br = courant_bracket(&dx, &dy, &h).unwrap();
        assert!(br.vector().is_zero());
        assert_eq!(br.covector(), &Form::d_var(&ch, 2).neg());
        // ⟦∂x, x∂y⟧ = ∂y
        let x = Poly::var(&ch, 0);
        let x_dy =
            GenSection::from_vector(PolyVector::d_dvar(&ch, 1).scale_poly(&x).unwrap()).unwrap();
        let br2 = courant_bracket(&dx, &x_dy, &zero_h).unwrap();
        assert_eq!(br2.vector(), &PolyVector::d_dvar(&ch, 1));
        assert!(br2.covector().is_zero());
        // non-closed H is rejected (top-degree forms are closed, so go to ℝ⁴)
        let c4 = Chart::real(4);
        let bad_h = Form::d_var(&c4, 0)
            .wedge(&Form::d_var(&c4, 1))
            .unwrap()
            .wedge(&Form::d_var(&c4, 2))
            .unwrap()
            .scale_poly(&Poly::var(&c4, 3))
            .unwrap();
        assert!(matches!(
            courant_bracket(&section_dx(&c4, 0), &section_dx(&c4, 1), &bad_h),
            Err(CoreError::NotClosed(_))
        ));
    }

    #[test]
    fn b_transform_examples() {
        let ch = Chart::real(2);
        let b = Form::d_var(&ch, 0).wedge(&Form::d_var(&ch, 1)).unwrap();
        // e^{dx∧dy}_*(∂x) = ∂x − dy
        let u = section_dx(&ch, 0);
        let tu = b_transform_section(&b, &u).unwrap();
        assert_eq!(tu.vector(), &PolyVector::d_dvar(&ch, 0));
        assert_eq!(tu.covector(), &Form::d_var(&ch, 1).neg());
        // pure covectors are fixed
        let xi = GenSection::from_covector(Form::d_var(&ch, 0)).unwrap();
        assert_eq!(b_transform_section(&b, &xi).unwrap(), xi);
        // e^0 is the identity
        assert_eq!(b_transform_section(&Form::zero(&ch), &u).unwrap(), u);
        // compatibility: e^B∧(u·ρ) = (e^B_* u)·(e^B∧ρ)
        let rho = Form::one(&ch).add(&b.scale(&GaussRat::i())).unwrap();
        let lhs = exp_wedge(&b, &clifford_act(&u, &rho).unwrap()).unwrap();
        let rhs = clifford_act(&tu, &exp_wedge(&b, &rho).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chevalley_examples() {
        // ρ = 1 + i dx∧dy on ℝ²: (ρ, ρ̄)_Ch = 2i dx∧dy
        let ch = Chart::real(2);
        let dxdy = Form::d_var(&ch, 0).wedge(&Form::d_var(&ch, 1)).unwrap();
        let rho = Form::one(&ch).add(&dxdy.scale(&GaussRat::i())).unwrap();
        let pair = chevalley(&rho, &rho.conjugate()).unwrap();
        assert_eq!(pair, dxdy.scale(&GaussRat::from_parts(0, 1, 2, 1)));
        // ρ = dz on ℂ¹: (ρ, ρ̄)_Ch = dz∧dz̄ ≠ 0
        let c1 = Chart::holo(1);
        let dz = Form::d_var(&c1, c1.holo_var(0));
        let pair1 = chevalley(&dz, &dz.conjugate()).unwrap();
        assert_eq!(
            pair1,
            dz.wedge(&Form::d_var(&c1, c1.antiholo_var(0))).unwrap()
        );
        // ρ = dz1 on ℂ²: degenerate, pairing vanishes
        let c2 = Chart::holo(2);
        let dz1 = Form::d_var(&c2, c2.holo_var(0));
        assert!(chevalley(&dz1, &dz1.conjugate()).unwrap().is_zero());
    }
}
