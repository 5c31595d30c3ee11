//! Exact dense linear algebra over a field, by Gaussian elimination.
//!
//! Used for annihilator solves, eigenspaces, Dirac images and the J-operator
//! identities; sizes stay in the dozens so no pivoting strategy beyond
//! first-nonzero is needed.

use crate::ratfn::RationalFn;
use crate::scalar::GaussRat;

pub trait Field: Clone + PartialEq {
    fn f_zero(like: &Self) -> Self;
    fn f_one(like: &Self) -> Self;
    fn f_add(&self, other: &Self) -> Self;
    fn f_sub(&self, other: &Self) -> Self;
    fn f_mul(&self, other: &Self) -> Self;
    fn f_inv(&self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_is_zero(&self) -> bool;
}

impl Field for GaussRat {
    fn f_zero(_: &Self) -> Self {
        GaussRat::zero()
    }
    fn f_one(_: &Self) -> Self {
        GaussRat::one()
    }
    fn f_add(&self, other: &Self) -> Self {
        self + other
    }
    fn f_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn f_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn f_inv(&self) -> Self {
        self.inv()
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Field for RationalFn {
    fn f_zero(like: &Self) -> Self {
        RationalFn::zero(like.chart())
    }
    fn f_one(like: &Self) -> Self {
        RationalFn::one(like.chart())
    }
    fn f_add(&self, other: &Self) -> Self {
        self.add(other).expect("same chart")
    }
    fn f_sub(&self, other: &Self) -> Self {
        self.sub(other).expect("same chart")
    }
    fn f_mul(&self, other: &Self) -> Self {
        self.mul(other).expect("same chart")
    }
    fn f_inv(&self) -> Self {
        RationalFn::one(self.chart()).div(self).expect("nonzero")
    }
    fn f_neg(&self) -> Self {
        self.neg()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: F) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn identity(n: usize, like: &F) -> Self {
        let mut m = Matrix::filled(n, n, F::f_zero(like));
        for i in 0..n {
            *m.at_mut(i, i) = F::f_one(like);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let zero = F::f_zero(&self.data[0]);
        let mut out = Matrix::filled(self.rows, other.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.f_is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.f_mul(other.at(k, j));
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = cur.f_add(&prod);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.f_add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.f_mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.f_neg()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let zero = F::f_zero(&self.data[0]);
        let mut out = vec![zero; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.f_is_zero() || v[j].f_is_zero() {
                    continue;
                }
                out[i] = out[i].f_add(&a.f_mul(&v[j]));
            }
        }
        out
    }

    /// Row echelon reduction in place; returns pivot column indices.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).f_is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.at(row, col).f_inv();
            for c in col..self.cols {
                let v = self.at(row, c).f_mul(&inv);
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).f_is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).f_sub(&factor.f_mul(self.at(row, c)));
                    *self.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.data.is_empty() {
            return 0;
        }
        let mut m = self.clone();
        m.echelon().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        if self.data.is_empty() {
            return Vec::new();
        }
        let zero = F::f_zero(&self.data[0]);
        let one = F::f_one(&self.data[0]);
        let mut m = self.clone();
        let pivots = m.echelon();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = m.at(prow, free).f_neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self · x = b`; None when inconsistent. Returns one solution.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let zero = F::f_zero(&self.data[0]);
        let mut aug = Matrix::filled(self.rows, self.cols + 1, zero.clone());
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.echelon();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![zero; self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse; None when singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let zero = F::f_zero(&self.data[0]);
        let mut aug = Matrix::filled(n, 2 * n, zero);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = F::f_one(&self.data[0]);
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Matrix::filled(n, n, F::f_zero(&self.data[0]));
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }
}

/// Rank of the span of a list of vectors.
pub fn span_rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let data: Vec<F> = vectors.iter().flat_map(|v| v.iter().cloned()).collect();
    Matrix::new(vectors.len(), cols, data).rank()
}

/// True when two spans of equal rank coincide.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<Vec<F>> = a.to_vec();
    all.extend(b.iter().cloned());
    span_rank(&all) == ra
}

/// Reduce a spanning list to a basis (subset of the input rows).
pub fn span_basis<F: Field>(vectors: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut basis: Vec<Vec<F>> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if span_rank(&trial) > basis.len() {
            basis.push(v.clone());
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::from_ratio(n, d)
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::new(
            2,
            2,
            vec![q(1, 1), q(2, 1), q(3, 1), q(5, 1)],
        );
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert_eq!(prod, Matrix::identity(2, &q(1, 1)));
        let x = m.solve(&[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1, 1), q(0, 1)]);
    }

    #[test]
    fn nullspace_rank() {
        // rank-1 matrix [[1,2],[2,4]]
        let m = Matrix::new(2, 2, vec![q(1, 1), q(2, 1), q(2, 1), q(4, 1)]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let out = m.mul_vec(v);
        assert!(out.iter().all(|e| e.is_zero()));
        assert!(m.inverse().is_none());
        assert!(m.solve(&[q(1, 1), q(1, 1)]).is_none());
    }

    #[test]
    fn spans() {
        let a = vec![vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]];
        let b = vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]];
        assert!(same_span(&a, &b));
        let c = vec![vec![q(1, 1), q(1, 1)]];
        assert!(!same_span(&a, &c));
        assert_eq!(span_basis(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]).len(), 1);
    }
}
