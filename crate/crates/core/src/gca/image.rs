//! Backward and forward images of Dirac structures under pointwise linear
//! generalized maps `Φ = (φ, B)`.

use crate::chart::Chart;
use crate::error::CoreError;
use crate::gca::pointwise::DiracBasis;
use crate::linalg::{span_basis, Matrix};
use crate::scalar::GaussRat;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ImageDirection {
    Backward,
    Forward,
}

/// Pointwise data of a linear generalized map between charts: the matrix of
/// `dφ` (target dimension × source dimension, acting on frame coefficients)
/// and the antisymmetric matrix `B[i][j] = B(∂_i, ∂_j)` on the source.
#[derive(Clone, Debug)]
pub struct LinearMapData {
    pub source: Arc<Chart>,
    pub target: Arc<Chart>,
    pub phi: Matrix<GaussRat>,
    pub b: Matrix<GaussRat>,
    pub source_point: Vec<GaussRat>,
    pub target_point: Vec<GaussRat>,
}

impl LinearMapData {
    pub fn without_b(
        source: &Arc<Chart>,
        target: &Arc<Chart>,
        phi: Matrix<GaussRat>,
        source_point: Vec<GaussRat>,
        target_point: Vec<GaussRat>,
    ) -> Self {
        let m = source.nvars();
        LinearMapData {
            source: source.clone(),
            target: target.clone(),
            phi,
            b: Matrix::filled(m, m, GaussRat::zero()),
            source_point,
            target_point,
        }
    }

    fn check(&self) -> Result<(), CoreError> {
        let m = self.source.nvars();
        let n = self.target.nvars();
        if self.phi.rows != n || self.phi.cols != m {
            return Err(CoreError::InvalidInput(format!(
                "dφ is {}×{}, expected {}×{}",
                self.phi.rows, self.phi.cols, n, m
            )));
        }
        if self.b.rows != m || self.b.cols != m {
            return Err(CoreError::InvalidInput("B matrix has wrong shape".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if !(&(self.b.at(i, j) + self.b.at(j, i))).is_zero() {
                    return Err(CoreError::InvalidInput("B matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// `ι_X B` as a covector: entry `j` is `Σ_i X_i B(∂_i, ∂_j)`.
    fn b_contract(&self, x: &[GaussRat]) -> Vec<GaussRat> {
        let m = self.source.nvars();
        let mut out = vec![GaussRat::zero(); m];
        for j in 0..m {
            for i in 0..m {
                out[j] += &(&x[i] * self.b.at(i, j));
            }
        }
        out
    }

    /// `φ*ξ = dφᵀ ξ`.
    fn pullback(&self, xi: &[GaussRat]) -> Vec<GaussRat> {
        self.phi.transpose().mul_vec(xi)
    }
}

/// Compute `𝔅Φ(L) = {X + φ*ξ − ι_X B | φ_*X + ξ ∈ L}` (backward, `L` on the
/// target) or `𝔉Φ(L) = {φ_*X + ξ | X + φ*ξ − ι_X B ∈ L}` (forward, `L` on
/// the source). The result must be maximal isotropic; `RankDrop` otherwise.
pub fn image_linear(
    direction: ImageDirection,
    l: &DiracBasis,
    map: &LinearMapData,
) -> Result<DiracBasis, CoreError> {
    map.check()?;
    let m = map.source.nvars();
    let n = map.target.nvars();
    let d = l.basis.len();
    match direction {
        ImageDirection::Backward => Chart::same(&l.chart, &map.target)?,
        ImageDirection::Forward => Chart::same(&l.chart, &map.source)?,
    }

    // Unknowns (X ∈ ℂ^m, ξ ∈ ℂ^n, c ∈ ℂ^d); rows constrain membership in L.
    let cols = m + n + d;
    let zero = GaussRat::zero();
    let one = GaussRat::one();

    let mut rows: Vec<Vec<GaussRat>> = Vec::new();
    match direction {
        ImageDirection::Backward => {
            // φ_*X = (Lc)_vec and ξ = (Lc)_cov
            for r in 0..n {
                let mut row = vec![zero.clone(); cols];
                for c in 0..m {
                    row[c] = map.phi.at(r, c).clone();
                }
                for (k, bv) in l.basis.iter().enumerate() {
                    row[m + n + k] = -&bv[r];
                }
                rows.push(row);
            }
            for r in 0..n {
                let mut row = vec![zero.clone(); cols];
                row[m + r] = one.clone();
                for (k, bv) in l.basis.iter().enumerate() {
                    row[m + n + k] = -&bv[n + r];
                }
                rows.push(row);
            }
        }
        ImageDirection::Forward => {
            // X = (Lc)_vec and φ*ξ − ι_X B = (Lc)_cov
            for r in 0..m {
                let mut row = vec![zero.clone(); cols];
                row[r] = one.clone();
                for (k, bv) in l.basis.iter().enumerate() {
                    row[m + n + k] = -&bv[r];
                }
                rows.push(row);
            }
            let phit = map.phi.transpose();
            for r in 0..m {
                let mut row = vec![zero.clone(); cols];
                // (φ*ξ)_r
                for c in 0..n {
                    row[m + c] = phit.at(r, c).clone();
                }
                // −(ι_X B)_r = −Σ_i X_i B(∂_i, ∂_r)
                for i in 0..m {
                    row[i] = -map.b.at(i, r);
                }
                for (k, bv) in l.basis.iter().enumerate() {
                    row[m + n + k] = -&bv[m + r];
                }
                rows.push(row);
            }
        }
    }

    let sys = Matrix::new(rows.len(), cols, rows.concat());
    let null = sys.nullspace();

    let mut images: Vec<Vec<GaussRat>> = Vec::new();
    for sol in &null {
        let x = &sol[..m];
        let xi = &sol[m..m + n];
        let img = match direction {
            ImageDirection::Backward => {
                // X + φ*ξ − ι_X B on the source
                let pb = map.pullback(xi);
                let bx = map.b_contract(x);
                let mut v = Vec::with_capacity(2 * m);
                v.extend_from_slice(x);
                for j in 0..m {
                    v.push(&pb[j] - &bx[j]);
                }
                v
            }
            ImageDirection::Forward => {
                // φ_*X + ξ on the target
                let push = map.phi.mul_vec(x);
                let mut v = Vec::with_capacity(2 * n);
                v.extend_from_slice(&push);
                v.extend_from_slice(xi);
                v
            }
        };
        if img.iter().any(|e| !e.is_zero()) {
            images.push(img);
        }
    }

    let basis = span_basis(&images);
    let (chart, point, expected) = match direction {
        ImageDirection::Backward => (map.source.clone(), map.source_point.clone(), m),
        ImageDirection::Forward => (map.target.clone(), map.target_point.clone(), n),
    };
    if basis.len() != expected {
        return Err(CoreError::RankDrop {
            got: basis.len(),
            expected,
        });
    }
    let out = DiracBasis {
        chart,
        point,
        basis,
    };
    if !out.is_isotropic() {
        return Err(CoreError::RankDrop {
            got: out.dim(),
            expected,
        });
    }
    Ok(out)
}
