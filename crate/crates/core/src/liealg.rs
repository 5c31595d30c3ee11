//! Structure-constant Lie algebras over Gaussian rationals: Jacobi check,
//! the degeneracy map `Λ³g → Sym²g`, real-vs-complex comparison and the
//! classification of degenerate algebras.

use crate::error::CoreError;
use crate::linalg::{span_basis, Matrix};
use crate::scalar::GaussRat;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMarker {
    Real,
    Complex,
}

/// A finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_m c^m_{ij} e_m`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSC {
    pub dim: usize,
    pub field: FieldMarker,
    /// `(i, j) ↦` coefficient vector over the basis, for `i < j`.
    constants: BTreeMap<(usize, usize), Vec<GaussRat>>,
}

impl LieAlgebraSC {
    pub fn new(
        dim: usize,
        field: FieldMarker,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<GaussRat>)>,
    ) -> Result<Self, CoreError> {
        let mut constants = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim || i == j {
                return Err(CoreError::InvalidInput(format!(
                    "bracket indices ({}, {}) out of range for dimension {}",
                    i, j, dim
                )));
            }
            if v.len() != dim {
                return Err(CoreError::InvalidInput(
                    "bracket coefficient vector has wrong length".into(),
                ));
            }
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let (key, vec) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|c| -c).collect())
            };
            if field == FieldMarker::Real && vec.iter().any(|c| !c.is_real()) {
                return Err(CoreError::InvalidInput(
                    "real Lie algebra with non-real structure constants".into(),
                ));
            }
            constants.insert(key, vec);
        }
        Ok(LieAlgebraSC {
            dim,
            field,
            constants,
        })
    }

    pub fn abelian(dim: usize, field: FieldMarker) -> Self {
        LieAlgebraSC {
            dim,
            field,
            constants: BTreeMap::new(),
        }
    }

    /// The degenerate model: `[f, e_i] = e_i` with `f` the last basis vector.
    pub fn model(dim: usize, field: FieldMarker) -> Self {
        assert!(dim >= 2);
        let mut constants = BTreeMap::new();
        for i in 0..dim - 1 {
            let mut v = vec![GaussRat::zero(); dim];
            v[i] = -GaussRat::one(); // [e_i, f] = −e_i, stored for i < dim−1
            constants.insert((i, dim - 1), v);
        }
        LieAlgebraSC {
            dim,
            field,
            constants,
        }
    }

    /// so(3): `[e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2`.
    pub fn so3(field: FieldMarker) -> Self {
        let e = |k: usize| {
            let mut v = vec![GaussRat::zero(); 3];
            v[k] = GaussRat::one();
            v
        };
        LieAlgebraSC::new(3, field, [((0, 1), e(2)), ((1, 2), e(0)), ((0, 2), {
            let mut v = vec![GaussRat::zero(); 3];
            v[1] = -GaussRat::one();
            v
        })])
        .unwrap()
    }

    /// Heisenberg: `[x, y] = z`.
    pub fn heisenberg(field: FieldMarker) -> Self {
        let mut v = vec![GaussRat::zero(); 3];
        v[2] = GaussRat::one();
        LieAlgebraSC::new(3, field, [((0, 1), v)]).unwrap()
    }

    /// `[e_i, e_j]` for arbitrary index order.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<GaussRat> {
        if i == j {
            return vec![GaussRat::zero(); self.dim];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.constants.get(&key) {
            None => vec![GaussRat::zero(); self.dim],
            Some(v) if !flip => v.clone(),
            Some(v) => v.iter().map(|c| -c).collect(),
        }
    }

    pub fn bracket_vectors(&self, x: &[GaussRat], y: &[GaussRat]) -> Vec<GaussRat> {
        let mut out = vec![GaussRat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let coeff = &x[i] * &y[j];
                for (m, c) in self.bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[m] += &(c * &coeff);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    pub fn structure_constant(&self, m: usize, i: usize, j: usize) -> GaussRat {
        self.bracket(i, j)[m].clone()
    }

    /// Conjugate the structure constants by an invertible matrix `g`
    /// (new basis `e'_k = Σ g_{jk} e_j`).
    pub fn change_basis(&self, g: &Matrix<GaussRat>) -> Result<LieAlgebraSC, CoreError> {
        if g.rows != self.dim || g.cols != self.dim {
            return Err(CoreError::InvalidInput("basis matrix shape".into()));
        }
        let g_inv = g
            .inverse()
            .ok_or_else(|| CoreError::InvalidInput("basis change must be invertible".into()))?;
        let col = |k: usize| -> Vec<GaussRat> {
            (0..self.dim).map(|r| g.at(r, k).clone()).collect()
        };
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let br = self.bracket_vectors(&col(i), &col(j));
                // express br in the new basis: coefficients g^{-1}·br
                let coeffs = g_inv.mul_vec(&br);
                brackets.push(((i, j), coeffs));
            }
        }
        LieAlgebraSC::new(self.dim, self.field, brackets)
    }
}

/// `Σ_cyc [[e_i, e_j], e_m] = 0` for all basis triples.
pub fn jacobi_sc(g: &LieAlgebraSC) -> Result<(), CoreError> {
    let basis = |k: usize| {
        let mut v = vec![GaussRat::zero(); g.dim];
        v[k] = GaussRat::one();
        v
    };
    for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            for m in (j + 1)..g.dim {
                let mut total = vec![GaussRat::zero(); g.dim];
                for (a, b, c) in [(i, j, m), (j, m, i), (m, i, j)] {
                    let inner = g.bracket(a, b);
                    let outer = g.bracket_vectors(&inner, &basis(c));
                    for (t, v) in total.iter_mut().zip(outer) {
                        *t += &v;
                    }
                }
                if total.iter().any(|c| !c.is_zero()) {
                    return Err(CoreError::NotJacobi(i, j, m));
                }
            }
        }
    }
    Ok(())
}

/// Obstruction tensor of the degeneracy map `Λ³g → Sym²g`,
/// `x∧y∧z ↦ [x,y]z + [y,z]x + [z,x]y`, expanded over the basis
/// `e_a ⊙ e_b (a ≤ b)`. Empty iff the algebra is degenerate.
#[derive(Clone, Debug, Default)]
pub struct DegeneracyObstruction {
    /// `(i, j, m) ↦ [(a, b, coeff)]` for the nonzero images, `i < j < m`.
    pub entries: BTreeMap<(usize, usize, usize), Vec<(usize, usize, GaussRat)>>,
}

impl DegeneracyObstruction {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for DegeneracyObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, m), terms) in &self.entries {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let body: Vec<String> = terms
                .iter()
                .map(|(a, b, c)| format!("{}*e{}e{}", c, a + 1, b + 1))
                .collect();
            write!(
                f,
                "e{}∧e{}∧e{} ↦ {}",
                i + 1,
                j + 1,
                m + 1,
                body.join(" + ")
            )?;
        }
        Ok(())
    }
}

/// Evaluate the degeneracy map on all basis triples.
pub fn degeneracy(g: &LieAlgebraSC) -> Result<(bool, DegeneracyObstruction), CoreError> {
    jacobi_sc(g)?;
    let mut obstruction = DegeneracyObstruction::default();
    for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            for m in (j + 1)..g.dim {
                // Sym² coefficients indexed by (a ≤ b).
                let mut sym: BTreeMap<(usize, usize), GaussRat> = BTreeMap::new();
                let mut add = |bracket: Vec<GaussRat>, other: usize| {
                    for (p, c) in bracket.into_iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let key = if p <= other { (p, other) } else { (other, p) };
                        let entry = sym.entry(key).or_insert_with(GaussRat::zero);
                        *entry += &c;
                    }
                };
                add(g.bracket(i, j), m);
                add(g.bracket(j, m), i);
                add(g.bracket(m, i), j);
                let nonzero: Vec<(usize, usize, GaussRat)> = sym
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((a, b), c)| (a, b, c))
                    .collect();
                if !nonzero.is_empty() {
                    obstruction.entries.insert((i, j, m), nonzero);
                }
            }
        }
    }
    Ok((obstruction.is_empty(), obstruction))
}

/// Classification outcome for a degenerate Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum DegenerateClass {
    Abelian,
    /// Isomorphic to `e_1, …, e_{n−1}, f` with `[e_i, e_j] = 0`,
    /// `[f, e_i] = e_i`; carries the witness scaling applied to reach it.
    Model(usize),
    /// A degenerate algebra that fails structural classification — a defect
    /// signal for the classification claim within this corpus.
    Violation(String),
}

/// Verify the structure of a degenerate algebra: abelian, or derived algebra
/// abelian of codimension one with a complement acting as a nonzero scalar.
pub fn classify_degenerate(g: &LieAlgebraSC) -> Result<DegenerateClass, CoreError> {
    let (degenerate, _) = degeneracy(g)?;
    if !degenerate {
        return Err(CoreError::NotDegenerateInput);
    }
    if g.is_abelian() {
        return Ok(DegenerateClass::Abelian);
    }
    // Derived algebra D = span of all brackets.
    let mut gens: Vec<Vec<GaussRat>> = Vec::new();
    for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            let b = g.bracket(i, j);
            if b.iter().any(|c| !c.is_zero()) {
                gens.push(b);
            }
        }
    }
    let derived = span_basis(&gens);
    if derived.len() != g.dim - 1 {
        return Ok(DegenerateClass::Violation(format!(
            "derived algebra has dimension {}, expected {}",
            derived.len(),
            g.dim - 1
        )));
    }
    // D must be abelian.
    for a in &derived {
        for b in &derived {
            if g.bracket_vectors(a, b).iter().any(|c| !c.is_zero()) {
                return Ok(DegenerateClass::Violation(
                    "derived algebra is not abelian".into(),
                ));
            }
        }
    }
    // Pick a complement representative: a basis vector outside D.
    let mut complement = None;
    for k in 0..g.dim {
        let mut v = vec![GaussRat::zero(); g.dim];
        v[k] = GaussRat::one();
        let mut trial = derived.clone();
        trial.push(v.clone());
        if crate::linalg::span_rank(&trial) == g.dim {
            complement = Some(v);
            break;
        }
    }
    let f = complement.expect("derived has codimension 1");
    // ad_f restricted to D must be λ·Id with λ ≠ 0: solve [f, d_k] = λ d_k.
    let mut lambda: Option<GaussRat> = None;
    for dvec in &derived {
        let image = g.bracket_vectors(&f, dvec);
        // image must be proportional to dvec with one common ratio
        let mut ratio: Option<GaussRat> = None;
        for (iv, im) in dvec.iter().zip(&image) {
            if iv.is_zero() {
                if !im.is_zero() {
                    return Ok(DegenerateClass::Violation(
                        "ad-action is not diagonal on the derived algebra".into(),
                    ));
                }
                continue;
            }
            let r = im / iv;
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev == r => {}
                Some(_) => {
                    return Ok(DegenerateClass::Violation(
                        "ad-action is not scalar on a derived generator".into(),
                    ))
                }
            }
        }
        let r = ratio.expect("derived generator nonzero");
        match &lambda {
            None => lambda = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => {
                return Ok(DegenerateClass::Violation(
                    "ad-action eigenvalues differ across the derived algebra".into(),
                ))
            }
        }
    }
    match lambda {
        Some(l) if !l.is_zero() => Ok(DegenerateClass::Model(g.dim)),
        _ => Ok(DegenerateClass::Violation(
            "complement acts by zero on the derived algebra".into(),
        )),
    }
}

/// Realification of a complex algebra: basis `e_1, …, e_n, i·e_1, …, i·e_n`
/// over ℝ with the ℂ-bilinear bracket expanded into real and imaginary parts.
pub fn realify(g: &LieAlgebraSC) -> Result<LieAlgebraSC, CoreError> {
    let n = g.dim;
    let dim = 2 * n;
    let real = |c: &GaussRat| GaussRat::new(c.re.clone(), num_traits::Zero::zero());
    let imag = |c: &GaussRat| GaussRat::new(c.im.clone(), num_traits::Zero::zero());
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = g.bracket(i, j);
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            // [e_i, e_j] = Σ Re c · e_m + Im c · f_m
            if i < j {
                let mut v = vec![GaussRat::zero(); dim];
                for (m, cm) in c.iter().enumerate() {
                    v[m] = real(cm);
                    v[n + m] = imag(cm);
                }
                brackets.push(((i, j), v));
            }
            // [e_i, f_j] = i[e_i, e_j] = Σ −Im c · e_m + Re c · f_m
            let mut v = vec![GaussRat::zero(); dim];
            for (m, cm) in c.iter().enumerate() {
                v[m] = -imag(cm);
                v[n + m] = real(cm);
            }
            brackets.push(((i, n + j), v));
            // [f_i, f_j] = −[e_i, e_j]
            if i < j {
                let mut v = vec![GaussRat::zero(); dim];
                for (m, cm) in c.iter().enumerate() {
                    v[m] = -real(cm);
                    v[n + m] = -imag(cm);
                }
                brackets.push(((n + i, n + j), v));
            }
        }
    }
    LieAlgebraSC::new(dim, FieldMarker::Real, brackets)
}

/// Field-comparison report for degeneracy.
#[derive(Clone, Debug)]
pub struct FieldCompareReport {
    pub field: FieldMarker,
    /// Degeneracy over the declared field.
    pub degenerate: bool,
    /// For real algebras: degeneracy of the complexification (same constants
    /// over ℂ). For complex algebras: degeneracy of the realification over ℝ.
    pub other_field_degenerate: bool,
    /// `real ⇒ complex` implication observed (always reported, the converse
    /// can fail for realified complex algebras).
    pub implication_holds: bool,
}

/// Compare degeneracy across fields per the two directions of Remark-style
/// statements: complexification for real algebras, realification for complex.
pub fn degeneracy_field_compare(g: &LieAlgebraSC) -> Result<FieldCompareReport, CoreError> {
    let (deg, _) = degeneracy(g)?;
    match g.field {
        FieldMarker::Real => {
            // Complexification keeps the constants; the obstruction tensor has
            // the same entries, so the verdicts agree; computed independently.
            let mut gc = g.clone();
            gc.field = FieldMarker::Complex;
            let (deg_c, _) = degeneracy(&gc)?;
            Ok(FieldCompareReport {
                field: FieldMarker::Real,
                degenerate: deg,
                other_field_degenerate: deg_c,
                implication_holds: deg == deg_c,
            })
        }
        FieldMarker::Complex => {
            let gr = realify(g)?;
            let (deg_r, _) = degeneracy(&gr)?;
            // Degeneracy over ℝ must imply degeneracy over ℂ.
            Ok(FieldCompareReport {
                field: FieldMarker::Complex,
                degenerate: deg,
                other_field_degenerate: deg_r,
                implication_holds: !deg_r || deg,
            })
        }
    }
}
