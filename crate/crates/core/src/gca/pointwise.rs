//! Pointwise spinor linear algebra: numeric forms at a rational point,
//! Clifford annihilators, purity, spinor type and involutivity checks.

use crate::chart::Chart;
use crate::error::CoreError;
use crate::exterior::{Form, WedgeMask};
use crate::gca::GenSection;
use crate::linalg::{span_rank, Matrix};
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A numeric (point-evaluated) form: coefficients per wedge mask.
pub type NumForm = BTreeMap<WedgeMask, GaussRat>;

fn num_is_zero(f: &NumForm) -> bool {
    f.values().all(|c| c.is_zero())
}

fn num_add_term(f: &mut NumForm, mask: WedgeMask, c: GaussRat) {
    if c.is_zero() {
        return;
    }
    match f.entry(mask) {
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

/// Apply the Clifford action of the frame element with index `idx`
/// (0..D the vectors ∂_v, D..2D the covectors dv) to a numeric form.
fn clifford_frame(nvars: usize, idx: usize, f: &NumForm) -> NumForm {
    let mut out = NumForm::new();
    if idx < nvars {
        // ι_{∂_v}
        let v = idx as u32;
        let bit = 1u64 << v;
        for (mask, c) in f {
            if mask & bit == 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let val = if below % 2 == 0 { c.clone() } else { -c };
            num_add_term(&mut out, mask & !bit, val);
        }
    } else {
        // dv ∧ ·
        let v = (idx - nvars) as u32;
        let bit = 1u64 << v;
        for (mask, c) in f {
            if mask & bit != 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let val = if below % 2 == 0 { c.clone() } else { -c };
            num_add_term(&mut out, mask | bit, val);
        }
    }
    out
}

/// Matrix of `u ↦ u·ρ(point)` from frame coefficients (length 2D) to the
/// full 2^D-dimensional space of numeric forms.
fn clifford_matrix(nvars: usize, rho: &NumForm) -> Matrix<GaussRat> {
    let rows = 1usize << nvars;
    let cols = 2 * nvars;
    let mut m = Matrix::filled(rows, cols, GaussRat::zero());
    for idx in 0..cols {
        let image = clifford_frame(nvars, idx, rho);
        for (mask, c) in image {
            *m.at_mut(mask as usize, idx) = c;
        }
    }
    m
}

fn num_form_to_vec(nvars: usize, f: &NumForm) -> Vec<GaussRat> {
    let mut v = vec![GaussRat::zero(); 1usize << nvars];
    for (mask, c) in f {
        v[*mask as usize] = c.clone();
    }
    v
}

/// A basis of complex generalized vectors at a rational point. Coefficients
/// are stored frame-first: entries `0..D` over `∂`-generators, `D..2D` over
/// `d`-generators, in chart declaration order.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracBasis {
    pub chart: Arc<Chart>,
    pub point: Vec<GaussRat>,
    pub basis: Vec<Vec<GaussRat>>,
}

impl DiracBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Natural pairing of two numeric generalized vectors.
    pub fn pair(nvars: usize, a: &[GaussRat], b: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for v in 0..nvars {
            acc += &(&a[v] * &b[nvars + v]);
            acc += &(&b[v] * &a[nvars + v]);
        }
        &acc * &GaussRat::from_ratio(1, 2)
    }

    /// All pairwise pairings vanish.
    pub fn is_isotropic(&self) -> bool {
        let n = self.chart.nvars();
        for i in 0..self.basis.len() {
            for j in i..self.basis.len() {
                if !DiracBasis::pair(n, &self.basis[i], &self.basis[j]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `L ∩ L̄ = 0`: the concatenation of the basis and its conjugate has
    /// full combined rank.
    pub fn nondegenerate_with_conjugate(&self) -> bool {
        let mut all = self.basis.clone();
        all.extend(self.basis.iter().map(|v| conj_gen_vec(&self.chart, v)));
        span_rank(&all) == 2 * self.basis.len()
    }
}

/// Conjugate a numeric generalized vector: conjugate entries and swap the
/// z/z̄ frame slots (both in the ∂ block and the d block).
pub fn conj_gen_vec(chart: &Arc<Chart>, v: &[GaussRat]) -> Vec<GaussRat> {
    let n = chart.nvars();
    let mut out = vec![GaussRat::zero(); 2 * n];
    for i in 0..n {
        out[chart.conj_var(i)] = v[i].conj();
        out[n + chart.conj_var(i)] = v[n + i].conj();
    }
    out
}

/// Solve `(X+ξ)·ρ(point) = 0` exactly. Returns the solution basis and a
/// purity flag (solution dimension equals half the rank of `𝕋`).
pub fn annihilator(rho: &Form, point: &[GaussRat]) -> Result<(DiracBasis, bool), CoreError> {
    let chart = rho.chart().clone();
    let nvars = chart.nvars();
    let rho_pt = rho.eval(point)?;
    if num_is_zero(&rho_pt) {
        return Err(CoreError::ZeroSpinorAtPoint);
    }
    let m = clifford_matrix(nvars, &rho_pt);
    let basis = m.nullspace();
    let pure = basis.len() == nvars;
    Ok((
        DiracBasis {
            chart,
            point: point.to_vec(),
            basis,
        },
        pure,
    ))
}

/// Spinor-route type: the lowest nonzero homogeneous degree of `ρ(point)`.
pub fn type_at_spinor(rho: &Form, point: &[GaussRat]) -> Result<u32, CoreError> {
    let rho_pt = rho.eval(point)?;
    rho_pt
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mask, _)| mask.count_ones())
        .min()
        .ok_or(CoreError::ZeroSpinorAtPoint)
}

/// Outcome of an involutivity check over a sample of points.
#[derive(Clone, Debug)]
pub struct InvolutivityReport {
    pub involutive: bool,
    /// First failing point, if any.
    pub witness: Option<Vec<GaussRat>>,
}

/// Check `∃ X+ξ : d^H ρ = (X+ξ)·ρ` pointwise at each sample, with
/// `d^H ρ = dρ + H∧ρ`.
pub fn involutivity_check(
    rho: &Form,
    h: &Form,
    points: &[Vec<GaussRat>],
) -> Result<InvolutivityReport, CoreError> {
    Chart::same(rho.chart(), h.chart())?;
    if !h.is_zero() {
        let dh = h.ext_d();
        if !dh.is_zero() {
            return Err(CoreError::NotClosed(dh.to_string()));
        }
    }
    let chart = rho.chart().clone();
    let nvars = chart.nvars();
    let dh_rho = rho.ext_d().add(&h.wedge(rho)?)?;
    for point in points {
        let rho_pt = rho.eval(point)?;
        if num_is_zero(&rho_pt) {
            return Err(CoreError::ZeroSpinorAtPoint);
        }
        let target = dh_rho.eval(point)?;
        let m = clifford_matrix(nvars, &rho_pt);
        let b = num_form_to_vec(nvars, &target);
        if m.solve(&b).is_none() {
            return Ok(InvolutivityReport {
                involutive: false,
                witness: Some(point.clone()),
            });
        }
    }
    Ok(InvolutivityReport {
        involutive: true,
        witness: None,
    })
}

/// Evaluate a polynomial generalized section at a point, as a frame vector.
pub fn section_at_point(u: &GenSection, point: &[GaussRat]) -> Result<Vec<GaussRat>, CoreError> {
    let chart = u.chart().clone();
    let n = chart.nvars();
    let mut out = vec![GaussRat::zero(); 2 * n];
    for (mask, c) in u.vector().eval(point)? {
        let v = mask.trailing_zeros() as usize;
        out[v] = c;
    }
    for (mask, c) in u.covector().eval(point)? {
        let v = mask.trailing_zeros() as usize;
        out[n + v] = c;
    }
    Ok(out)
}

/// Clifford action of a numeric generalized vector on a numeric form.
pub fn clifford_apply(nvars: usize, u: &[GaussRat], f: &NumForm) -> NumForm {
    let mut out = NumForm::new();
    for (idx, coeff) in u.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (mask, c) in clifford_frame(nvars, idx, f) {
            num_add_term(&mut out, mask, &c * coeff);
        }
    }
    out
}
