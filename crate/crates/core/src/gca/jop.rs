//! Generalized complex structures as operators on the frame
//! `(∂-generators, d-generators)`, their standard models and conversions
//! between the operator, Dirac and spinor pictures.

use crate::chart::{Chart, VarKind};
use crate::error::CoreError;
use crate::exterior::{exp_contract, Form, PolyVector};
use crate::gca::pointwise::{conj_gen_vec, DiracBasis};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ratfn::RationalFn;
use crate::scalar::GaussRat;
use std::sync::Arc;

/// An operator on `𝕋 = T ⊕ T*` with rational-function entries over the
/// complexified frame: columns and rows are indexed by the `2·nvars`
/// frame elements, `∂`-generators first.
#[derive(Clone, Debug)]
pub struct JOperator {
    chart: Arc<Chart>,
    matrix: Matrix<RationalFn>,
}

impl JOperator {
    pub fn new(chart: &Arc<Chart>, matrix: Matrix<RationalFn>) -> Result<Self, CoreError> {
        let n = 2 * chart.nvars();
        if matrix.rows != n || matrix.cols != n {
            return Err(CoreError::InvalidJ(format!(
                "matrix is {}×{}, frame needs {}×{}",
                matrix.rows, matrix.cols, n, n
            )));
        }
        Ok(JOperator {
            chart: chart.clone(),
            matrix,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn matrix(&self) -> &Matrix<RationalFn> {
        &self.matrix
    }

    fn rf_zero(&self) -> RationalFn {
        RationalFn::zero(&self.chart)
    }

    /// `J² = −Id`, exactly.
    pub fn is_almost_complex(&self) -> bool {
        let sq = self.matrix.mul(&self.matrix);
        let minus_id = Matrix::identity(self.matrix.rows, &RationalFn::one(&self.chart)).neg();
        matrices_equal(&sq, &minus_id)
    }

    /// `⟨Ju, Jv⟩ = ⟨u, v⟩`, exactly: `Jᵀ G J = G` for the pairing Gram matrix.
    pub fn is_orthogonal(&self) -> bool {
        let g = self.gram();
        let jt = self.matrix.transpose();
        let lhs = jt.mul(&g).mul(&self.matrix);
        matrices_equal(&lhs, &g)
    }

    fn gram(&self) -> Matrix<RationalFn> {
        let n = self.chart.nvars();
        let half = RationalFn::from_poly(Poly::constant(
            &self.chart,
            GaussRat::from_ratio(1, 2),
        ))
        .expect("constant");
        let mut g = Matrix::filled(2 * n, 2 * n, self.rf_zero());
        for v in 0..n {
            *g.at_mut(v, n + v) = half.clone();
            *g.at_mut(n + v, v) = half.clone();
        }
        g
    }

    /// Realness: `J` commutes with the conjugation of the complexified frame.
    pub fn is_real(&self) -> bool {
        let c = self.conj_permutation();
        let conj_entries = Matrix {
            rows: self.matrix.rows,
            cols: self.matrix.cols,
            data: self.matrix.data.iter().map(|e| e.conjugate()).collect(),
        };
        let lhs = c.mul(&conj_entries).mul(&c);
        matrices_equal(&lhs, &self.matrix)
    }

    fn conj_permutation(&self) -> Matrix<RationalFn> {
        let n = self.chart.nvars();
        let one = RationalFn::one(&self.chart);
        let mut c = Matrix::filled(2 * n, 2 * n, self.rf_zero());
        for v in 0..n {
            let w = self.chart.conj_var(v);
            *c.at_mut(w, v) = one.clone();
            *c.at_mut(n + w, n + v) = one.clone();
        }
        c
    }

    /// Run all structural validations.
    pub fn validate(&self) -> Result<(), CoreError> {
        if !self.is_almost_complex() {
            return Err(CoreError::InvalidJ("J² ≠ −Id".into()));
        }
        if !self.is_orthogonal() {
            return Err(CoreError::InvalidJ("J is not orthogonal".into()));
        }
        if !self.is_real() {
            return Err(CoreError::InvalidJ("J is not a real operator".into()));
        }
        Ok(())
    }

    /// Evaluate all entries at a rational point.
    pub fn eval(&self, point: &[GaussRat]) -> Result<Matrix<GaussRat>, CoreError> {
        let mut data = Vec::with_capacity(self.matrix.data.len());
        for e in &self.matrix.data {
            data.push(e.eval(point)?);
        }
        Ok(Matrix::new(self.matrix.rows, self.matrix.cols, data))
    }

    /// Upper-right block `T* → T` (the anchor of `π_J`).
    pub fn poisson_block(&self) -> Matrix<RationalFn> {
        let n = self.chart.nvars();
        let mut b = Matrix::filled(n, n, self.rf_zero());
        for r in 0..n {
            for c in 0..n {
                *b.at_mut(r, c) = self.matrix.at(r, n + c).clone();
            }
        }
        b
    }

    /// `+i`-eigenspace at a point.
    pub fn dirac_basis(&self, point: &[GaussRat]) -> Result<DiracBasis, CoreError> {
        let m = self.eval(point)?;
        let sq = m.mul(&m);
        let minus_id = Matrix::identity(m.rows, &GaussRat::one()).neg();
        if sq != minus_id {
            return Err(CoreError::NotAComplexStructure(
                "J² ≠ −Id at the evaluation point".into(),
            ));
        }
        let mut shifted = m.clone();
        for d in 0..m.rows {
            let v = shifted.at(d, d).f_sub_i();
            *shifted.at_mut(d, d) = v;
        }
        let basis = shifted.nullspace();
        if basis.len() != self.chart.nvars() {
            return Err(CoreError::NotAComplexStructure(format!(
                "+i eigenspace has dimension {}, expected {}",
                basis.len(),
                self.chart.nvars()
            )));
        }
        Ok(DiracBasis {
            chart: self.chart.clone(),
            point: point.to_vec(),
            basis,
        })
    }

    /// Type at a point: half the real corank of the induced Poisson anchor.
    pub fn type_at(&self, point: &[GaussRat]) -> Result<u32, CoreError> {
        let block = self.poisson_block();
        let mut data = Vec::with_capacity(block.data.len());
        for e in &block.data {
            data.push(e.eval(point)?);
        }
        let m = Matrix::new(block.rows, block.cols, data);
        let corank = self.chart.nvars() - m.rank();
        if corank % 2 != 0 {
            return Err(CoreError::InvalidJ(
                "Poisson anchor has odd corank".into(),
            ));
        }
        Ok((corank / 2) as u32)
    }
}

trait SubI {
    fn f_sub_i(&self) -> Self;
}

impl SubI for GaussRat {
    fn f_sub_i(&self) -> GaussRat {
        self - &GaussRat::i()
    }
}

fn matrices_equal(a: &Matrix<RationalFn>, b: &Matrix<RationalFn>) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && a
            .data
            .iter()
            .zip(&b.data)
            .all(|(x, y)| x.eq_rational(y).unwrap_or(false))
}

/// Antisymmetric coefficient matrix `A[i][j] = ω(∂_i, ∂_j)` of a 2-form.
fn two_form_matrix(omega: &Form) -> Result<Matrix<RationalFn>, CoreError> {
    let chart = omega.chart().clone();
    let n = chart.nvars();
    let mut a = Matrix::filled(n, n, RationalFn::zero(&chart));
    for (mask, p) in omega.terms() {
        if mask.count_ones() != 2 {
            return Err(CoreError::DegreeError("expected a 2-form".into()));
        }
        let i = mask.trailing_zeros() as usize;
        let j = (63 - mask.leading_zeros()) as usize;
        let rf = RationalFn::from_poly(p.clone())?;
        *a.at_mut(i, j) = rf.clone();
        *a.at_mut(j, i) = rf.neg();
    }
    Ok(a)
}

/// Map matrix `ξ ↦ ι_ξ W` of a bivector: column = input `dv`, row = output `∂`.
fn bivector_map_matrix(w: &PolyVector) -> Result<Matrix<RationalFn>, CoreError> {
    let chart = w.chart().clone();
    let n = chart.nvars();
    let mut u = Matrix::filled(n, n, RationalFn::zero(&chart));
    for (mask, p) in w.terms() {
        if mask.count_ones() != 2 {
            return Err(CoreError::DegreeError("expected a bivector".into()));
        }
        let v = mask.trailing_zeros() as usize;
        let wv = (63 - mask.leading_zeros()) as usize;
        let rf = RationalFn::from_poly(p.clone())?;
        // ι_{dv_v}(∂_v∧∂_w) = ∂_w ; ι_{dv_w}(∂_v∧∂_w) = −∂_v
        *u.at_mut(wv, v) = u.at(wv, v).add(&rf)?;
        *u.at_mut(v, wv) = u.at(v, wv).sub(&rf)?;
    }
    Ok(u)
}

/// Reconstruct a bivector from an antisymmetric map block (inverse of
/// `bivector_map_matrix`); fails if entries are not polynomial.
pub fn bivector_from_block(
    chart: &Arc<Chart>,
    block: &Matrix<RationalFn>,
) -> Result<PolyVector, CoreError> {
    let n = chart.nvars();
    let mut out = PolyVector::zero(chart);
    for v in 0..n {
        for w in (v + 1)..n {
            if !block.at(w, v).add(&block.at(v, w).clone())?.is_zero() {
                return Err(CoreError::InvalidJ(
                    "Poisson block is not antisymmetric".into(),
                ));
            }
            let entry = block.at(w, v);
            if entry.is_zero() {
                continue;
            }
            let p = entry.as_poly().ok_or_else(|| {
                CoreError::InvalidInput("Poisson block entry is not polynomial".into())
            })?;
            let biv = PolyVector::d_dvar(chart, v)
                .wedge(&PolyVector::d_dvar(chart, w))?
                .scale_poly(&p)?;
            out = out.add(&biv)?;
        }
    }
    Ok(out)
}

/// Standard structures of generalized complex geometry.
pub enum StandardKind {
    /// The complex structure of an all-holomorphic chart.
    Complex,
    /// A symplectic structure on an all-real chart.
    Symplectic(Form),
    /// A holomorphic Poisson structure `(I, σ)` on an all-holomorphic chart;
    /// `σ = 0` reduces to the complex case.
    HoloPoisson(PolyVector),
}

/// Build the operator and spinor-line pair for a standard structure.
pub fn standard_structure(
    chart: &Arc<Chart>,
    kind: StandardKind,
) -> Result<(JOperator, Form), CoreError> {
    match kind {
        StandardKind::Complex => {
            standard_structure(chart, StandardKind::HoloPoisson(PolyVector::zero(chart)))
        }
        StandardKind::Symplectic(omega) => {
            Chart::same(chart, omega.chart())?;
            if chart.n_holo() != 0 {
                return Err(CoreError::InvalidInput(
                    "symplectic model expects an all-real chart".into(),
                ));
            }
            if omega.degree() != Some(2) {
                return Err(CoreError::DegreeError("ω must be a 2-form".into()));
            }
            if !omega.ext_d().is_zero() {
                return Err(CoreError::NotClosed(omega.ext_d().to_string()));
            }
            let a = two_form_matrix(&omega)?;
            let at = a.transpose();
            let at_inv = at
                .inverse()
                .ok_or_else(|| CoreError::InvalidInput("ω is degenerate".into()))?;
            let n = chart.nvars();
            let mut m = Matrix::filled(2 * n, 2 * n, RationalFn::zero(chart));
            for r in 0..n {
                for c in 0..n {
                    *m.at_mut(r, n + c) = at_inv.at(r, c).neg();
                    *m.at_mut(n + r, c) = at.at(r, c).clone();
                }
            }
            let j = JOperator::new(chart, m)?;
            let spinor = crate::exterior::exp_wedge(
                &omega.scale(&GaussRat::i()),
                &Form::one(chart),
            )?;
            Ok((j, spinor))
        }
        StandardKind::HoloPoisson(sigma) => {
            Chart::same(chart, sigma.chart())?;
            if chart.n_real() != 0 {
                return Err(CoreError::InvalidInput(
                    "holomorphic model expects an all-holomorphic chart".into(),
                ));
            }
            if !crate::exterior::is_holo_bivector(&sigma) {
                return Err(CoreError::InvalidInput(
                    "σ must be a z̄-free bivector over holomorphic directions".into(),
                ));
            }
            let n = chart.nvars();
            let i_rf = |c: GaussRat| {
                RationalFn::from_poly(Poly::constant(chart, c)).expect("constant entry")
            };
            let mut m = Matrix::filled(2 * n, 2 * n, RationalFn::zero(chart));
            // −I on vectors: ∂z ↦ −i∂z, ∂z̄ ↦ +i∂z̄. I* on covectors:
            // dz ↦ +i dz, dz̄ ↦ −i dz̄.
            for v in 0..n {
                let sgn = match chart.kind(v) {
                    VarKind::Holo => -GaussRat::i(),
                    VarKind::AntiHolo => GaussRat::i(),
                    VarKind::Real => unreachable!(),
                };
                *m.at_mut(v, v) = i_rf(sgn.clone());
                *m.at_mut(n + v, n + v) = i_rf(-sgn);
            }
            // Upper-right block 4IQ = 2i(σ − σ̄) as a map T* → T.
            let two_i = GaussRat::from_parts(0, 1, 2, 1);
            let diff = sigma.sub(&sigma.conjugate())?.scale(&two_i);
            if !diff.is_zero() {
                let block = bivector_map_matrix(&diff)?;
                for r in 0..n {
                    for c in 0..n {
                        *m.at_mut(r, n + c) = block.at(r, c).clone();
                    }
                }
            }
            let j = JOperator::new(chart, m)?;
            // Spinor e^σ(dz¹ ∧ … ∧ dz^k).
            let mut omega_hol = Form::one(chart);
            for jdx in 0..chart.n_holo() {
                omega_hol = omega_hol.wedge(&Form::d_var(chart, chart.holo_var(jdx)))?;
            }
            let spinor = exp_contract(&sigma, &omega_hol)?;
            Ok((j, spinor))
        }
    }
}

/// Assemble the operator `i(P_L − P_{L̄})` from a Dirac basis with
/// `L ⊕ L̄ = 𝕋`, and verify it is a real orthogonal complex structure.
pub fn j_from_dirac(basis: &DiracBasis) -> Result<JOperator, CoreError> {
    let chart = basis.chart.clone();
    let n = chart.nvars();
    if basis.basis.len() != n {
        return Err(CoreError::InvalidInput(format!(
            "Dirac basis has {} vectors, expected {}",
            basis.basis.len(),
            n
        )));
    }
    let mut cols: Vec<Vec<GaussRat>> = basis.basis.clone();
    cols.extend(basis.basis.iter().map(|v| conj_gen_vec(&chart, v)));
    let mut s = Matrix::filled(2 * n, 2 * n, GaussRat::zero());
    for (c, col) in cols.iter().enumerate() {
        for (r, val) in col.iter().enumerate() {
            *s.at_mut(r, c) = val.clone();
        }
    }
    let s_inv = s.inverse().ok_or(CoreError::DegeneratePair)?;
    let mut d = Matrix::filled(2 * n, 2 * n, GaussRat::zero());
    for k in 0..n {
        *d.at_mut(k, k) = GaussRat::i();
        *d.at_mut(n + k, n + k) = -GaussRat::i();
    }
    let j_num = s.mul(&d).mul(&s_inv);
    let entries: Vec<RationalFn> = j_num
        .data
        .iter()
        .map(|c| RationalFn::from_poly(Poly::constant(&chart, c.clone())).expect("constant"))
        .collect();
    let j = JOperator::new(&chart, Matrix::new(2 * n, 2 * n, entries))?;
    j.validate()?;
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::pointwise::annihilator;
    use crate::linalg::same_span;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn origin(chart: &Arc<Chart>) -> Vec<GaussRat> {
        vec![q(0); chart.nvars()]
    }

    #[test]
    fn symplectic_standard_structure() {
        // ω = dx∧dy on ℝ²: J_ω has blocks 0, −ω^{-1}, ω, 0 and spinor e^{iω}.
        let ch = Chart::real(2);
        let omega = Form::d_var(&ch, 0).wedge(&Form::d_var(&ch, 1)).unwrap();
        let (j, spinor) = standard_structure(&ch, StandardKind::Symplectic(omega.clone())).unwrap();
        j.validate().unwrap();
        assert_eq!(
            spinor,
            Form::one(&ch).add(&omega.scale(&GaussRat::i())).unwrap()
        );
        // type 0 everywhere
        assert_eq!(j.type_at(&origin(&ch)).unwrap(), 0);
        // eigenspace equals spinor annihilator
        let pt = vec![q(3), q(-2)];
        let eig = j.dirac_basis(&pt).unwrap();
        let (ann, pure) = annihilator(&spinor, &pt).unwrap();
        assert!(pure);
        assert!(same_span(&eig.basis, &ann.basis));
        // poisson_from_j(J_ω) = ∂x∧∂y, the bivector −ω^{-1}
        let biv = bivector_from_block(&ch, &j.poisson_block()).unwrap();
        let expected = PolyVector::d_dvar(&ch, 0)
            .wedge(&PolyVector::d_dvar(&ch, 1))
            .unwrap();
        assert_eq!(biv, expected);
    }

    #[test]
    fn complex_standard_structure() {
        // Standard I on ℂ¹: spinor dz, vanishing Poisson block, type 1.
        let ch = Chart::holo(1);
        let (j, spinor) = standard_structure(&ch, StandardKind::Complex).unwrap();
        j.validate().unwrap();
        assert_eq!(spinor, Form::d_var(&ch, ch.holo_var(0)));
        let biv = bivector_from_block(&ch, &j.poisson_block()).unwrap();
        assert!(biv.is_zero());
        assert_eq!(j.type_at(&origin(&ch)).unwrap(), 1);
        // L_I = T^{0,1} ⊕ (T*)^{1,0}
        let eig = j.dirac_basis(&origin(&ch)).unwrap();
        let expected = vec![
            vec![q(0), q(1), q(0), q(0)], // ∂z̄
            vec![q(0), q(0), q(1), q(0)], // dz
        ];
        assert!(same_span(&eig.basis, &expected));
    }

    #[test]
    fn holo_poisson_structure_and_convention() {
        // σ = z1 ∂1∧∂2 on ℂ²: annihilator of e^σΩ = T^{0,1} ⊕ (1+σ)(T*)^{1,0},
        // and the J_σ eigenspace matches at sampled points.
        let ch = Chart::holo(2);
        let z1 = Poly::var(&ch, ch.holo_var(0));
        let sigma = PolyVector::d_dvar(&ch, ch.holo_var(0))
            .wedge(&PolyVector::d_dvar(&ch, ch.holo_var(1)))
            .unwrap()
            .scale_poly(&z1)
            .unwrap();
        let (j, spinor) =
            standard_structure(&ch, StandardKind::HoloPoisson(sigma.clone())).unwrap();
        j.validate().unwrap();
        // point z1 = 2 (so z̄1 = 2), z2 = 0
        let pt = vec![q(2), q(2), q(0), q(0)];
        let eig = j.dirac_basis(&pt).unwrap();
        let (ann, pure) = annihilator(&spinor, &pt).unwrap();
        assert!(pure);
        assert!(same_span(&eig.basis, &ann.basis));
        // explicit expected span: ∂z̄1, ∂z̄2, (1+σ)dz1 = dz1 + z1 ∂2, (1+σ)dz2 = dz2 − z1 ∂1
        // frame order: (∂z1, ∂z̄1, ∂z2, ∂z̄2, dz1, dz̄1, dz2, dz̄2)
        let expected = vec![
            vec![q(0), q(1), q(0), q(0), q(0), q(0), q(0), q(0)],
            vec![q(0), q(0), q(0), q(1), q(0), q(0), q(0), q(0)],
            vec![q(0), q(0), q(2), q(0), q(1), q(0), q(0), q(0)],
            vec![-q(2), q(0), q(0), q(0), q(0), q(0), q(1), q(0)],
        ];
        assert!(same_span(&ann.basis, &expected));
        // types agree between routes: 0 away from z1 = 0, 2 on it
        assert_eq!(j.type_at(&pt).unwrap(), 0);
        assert_eq!(
            crate::gca::pointwise::type_at_spinor(&spinor, &pt).unwrap(),
            0
        );
        let org = origin(&ch);
        assert_eq!(j.type_at(&org).unwrap(), 2);
        assert_eq!(
            crate::gca::pointwise::type_at_spinor(&spinor, &org).unwrap(),
            2
        );
    }

    #[test]
    fn j_from_dirac_round_trip() {
        let ch = Chart::real(2);
        let omega = Form::d_var(&ch, 0).wedge(&Form::d_var(&ch, 1)).unwrap();
        let (j, _) = standard_structure(&ch, StandardKind::Symplectic(omega)).unwrap();
        let pt = vec![q(1), q(4)];
        let basis = j.dirac_basis(&pt).unwrap();
        let j2 = j_from_dirac(&basis).unwrap();
        assert!(matrices_equal(j.matrix(), j2.matrix()));
    }

    #[test]
    fn degenerate_pair_rejected() {
        // A basis containing a real vector has L ∩ L̄ ≠ 0.
        let ch = Chart::real(1);
        let basis = DiracBasis {
            chart: ch.clone(),
            point: vec![q(0)],
            basis: vec![vec![q(1), q(0)]],
        };
        assert!(matches!(
            j_from_dirac(&basis),
            Err(CoreError::DegeneratePair)
        ));
    }
}
