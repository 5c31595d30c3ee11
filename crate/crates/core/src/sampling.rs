//! Seeded random generators for rational points, polynomials, forms and
//! sections. Used by the CLI's sampled checks and by the test suites;
//! everything is deterministic given the `ChaCha` seed.

use crate::chart::Chart;
use crate::exterior::{Form, PolyVector, WedgeMask};
use crate::gca::GenSection;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussRat;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Small Gaussian rational with numerators in `[-max, max]` and denominators
/// in `{1, 2, 3}`.
pub fn gauss_rat<R: Rng>(rng: &mut R, max: i64, complex: bool) -> GaussRat {
    let re_n = rng.gen_range(-max..=max);
    let re_d = rng.gen_range(1..=3);
    let (im_n, im_d) = if complex {
        (rng.gen_range(-max..=max), rng.gen_range(1..=3))
    } else {
        (0, 1)
    };
    GaussRat::from_parts(re_n, re_d, im_n, im_d)
}

pub fn nonzero_gauss_rat<R: Rng>(rng: &mut R, max: i64, complex: bool) -> GaussRat {
    loop {
        let g = gauss_rat(rng, max, complex);
        if !g.is_zero() {
            return g;
        }
    }
}

/// A rational evaluation point: real coordinates get real values, conjugate
/// generators get conjugate values.
pub fn point<R: Rng>(rng: &mut R, chart: &Arc<Chart>, max: i64) -> Vec<GaussRat> {
    let mut p = vec![GaussRat::zero(); chart.nvars()];
    for v in 0..chart.n_real() {
        p[v] = gauss_rat(rng, max, false);
    }
    for j in 0..chart.n_holo() {
        let z = gauss_rat(rng, max, true);
        p[chart.holo_var(j)] = z.conj().conj();
        p[chart.antiholo_var(j)] = z.conj();
        p[chart.holo_var(j)] = z;
    }
    p
}

pub fn monomial<R: Rng>(rng: &mut R, chart: &Arc<Chart>, max_degree: u32) -> Monomial {
    let mut e = vec![0u32; chart.nvars()];
    let deg = rng.gen_range(0..=max_degree);
    for _ in 0..deg {
        let v = rng.gen_range(0..chart.nvars());
        e[v] += 1;
    }
    Monomial(e)
}

pub fn poly<R: Rng>(
    rng: &mut R,
    chart: &Arc<Chart>,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, GaussRat)> = (0..n)
        .map(|_| (monomial(rng, chart, max_degree), gauss_rat(rng, 4, true)))
        .collect();
    Poly::from_terms(chart, terms)
}

fn random_mask<R: Rng>(rng: &mut R, chart: &Arc<Chart>, degree: u32) -> WedgeMask {
    let mut mask: WedgeMask = 0;
    let mut count = 0;
    while count < degree {
        let v = rng.gen_range(0..chart.nvars());
        let bit = 1u64 << v;
        if mask & bit == 0 {
            mask |= bit;
            count += 1;
        }
    }
    mask
}

/// Random form with a handful of terms of the given degrees.
pub fn form<R: Rng>(
    rng: &mut R,
    chart: &Arc<Chart>,
    degrees: &[u32],
    max_coeff_degree: u32,
    max_terms: usize,
) -> Form {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(WedgeMask, Poly)> = (0..n)
        .map(|_| {
            let d = degrees[rng.gen_range(0..degrees.len())];
            (
                random_mask(rng, chart, d),
                poly(rng, chart, max_coeff_degree, 2),
            )
        })
        .collect();
    Form::from_terms(chart, terms)
}

pub fn polyvector<R: Rng>(
    rng: &mut R,
    chart: &Arc<Chart>,
    degrees: &[u32],
    max_coeff_degree: u32,
    max_terms: usize,
) -> PolyVector {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(WedgeMask, Poly)> = (0..n)
        .map(|_| {
            let d = degrees[rng.gen_range(0..degrees.len())];
            (
                random_mask(rng, chart, d),
                poly(rng, chart, max_coeff_degree, 2),
            )
        })
        .collect();
    PolyVector::from_terms(chart, terms)
}

/// Random generalized section with degree-≤2 polynomial coefficients.
pub fn section<R: Rng>(rng: &mut R, chart: &Arc<Chart>, max_coeff_degree: u32) -> GenSection {
    let vec = polyvector(rng, chart, &[1], max_coeff_degree, 3);
    let cov = form(rng, chart, &[1], max_coeff_degree, 3);
    GenSection::new(vec, cov).expect("degree-1 parts")
}

/// Random closed 3-form: `d` of a random 2-form.
pub fn closed_three_form<R: Rng>(rng: &mut R, chart: &Arc<Chart>, max_coeff_degree: u32) -> Form {
    form(rng, chart, &[2], max_coeff_degree, 3).ext_d()
}

/// Random invertible rational matrix, built from random unitriangular
/// factors so the inverse is exact and well-conditioned.
pub fn invertible_matrix<R: Rng>(
    rng: &mut R,
    n: usize,
    complex: bool,
) -> crate::linalg::Matrix<GaussRat> {
    use crate::linalg::Matrix;
    let mut lower = Matrix::identity(n, &GaussRat::one());
    let mut upper = Matrix::identity(n, &GaussRat::one());
    for i in 0..n {
        for j in 0..i {
            *lower.at_mut(i, j) = gauss_rat(rng, 2, complex);
            *upper.at_mut(j, i) = gauss_rat(rng, 2, complex);
        }
    }
    // Nonzero diagonal scaling on one factor.
    for i in 0..n {
        let d = nonzero_gauss_rat(rng, 2, complex);
        let v = upper.at(i, i).f_mul_ref(&d);
        *upper.at_mut(i, i) = v;
    }
    lower.mul(&upper)
}

trait MulRef {
    fn f_mul_ref(&self, other: &Self) -> Self;
}

impl MulRef for GaussRat {
    fn f_mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Random Lie algebra drawn from the base families (abelian, model,
/// Heisenberg-padded, so(3)-padded) conjugated by a random invertible
/// matrix; always satisfies Jacobi.
pub fn lie_algebra<R: Rng>(
    rng: &mut R,
    dim: usize,
    field: crate::liealg::FieldMarker,
) -> crate::liealg::LieAlgebraSC {
    use crate::liealg::LieAlgebraSC;
    let complex = field == crate::liealg::FieldMarker::Complex;
    let pad = |base: LieAlgebraSC, dim: usize| -> LieAlgebraSC {
        // direct sum with an abelian complement
        let mut brackets = Vec::new();
        for i in 0..base.dim {
            for j in (i + 1)..base.dim {
                let mut v = base.bracket(i, j);
                v.resize(dim, GaussRat::zero());
                brackets.push(((i, j), v));
            }
        }
        LieAlgebraSC::new(dim, field, brackets).expect("padded algebra")
    };
    let choice = rng.gen_range(0..4);
    let g = match choice {
        0 => LieAlgebraSC::abelian(dim, field),
        1 if dim >= 2 => LieAlgebraSC::model(dim, field),
        2 if dim >= 3 => pad(LieAlgebraSC::heisenberg(field), dim),
        3 if dim >= 3 => pad(LieAlgebraSC::so3(field), dim),
        _ => LieAlgebraSC::abelian(dim, field),
    };
    let m = invertible_matrix(rng, dim, complex);
    g.change_basis(&m).expect("invertible basis change")
}

/// Random Jacobi-passing holomorphic Poisson bivector with linear and
/// quadratic entries, drawn from families that are Poisson by construction:
/// linear structures of Lie algebras, decomposable `f·∂_a∧∂_b`, and
/// log-canonical `{z^i, z^j} = c_{ij} z^i z^j`.
pub fn poisson_bivector<R: Rng>(rng: &mut R, k: usize) -> crate::blowup::HoloBivector {
    use crate::blowup::{linear_poisson, HoloBivector};
    let chart = Chart::holo(k);
    match rng.gen_range(0..4) {
        0 => {
            let g = lie_algebra(rng, k, crate::liealg::FieldMarker::Complex);
            linear_poisson(&g, &chart).expect("linear Poisson")
        }
        1 => {
            // f·∂_a∧∂_b is Poisson for any polynomial f
            if k < 2 {
                return HoloBivector::zero(&chart).unwrap();
            }
            let a = rng.gen_range(0..k);
            let b = loop {
                let b = rng.gen_range(0..k);
                if b != a {
                    break b;
                }
            };
            let mut f = Poly::zero(&chart);
            for _ in 0..rng.gen_range(1..=3usize) {
                let deg = rng.gen_range(0..=2u32);
                let mut mono = vec![0u32; chart.nvars()];
                for _ in 0..deg {
                    mono[chart.holo_var(rng.gen_range(0..k))] += 1;
                }
                f = f
                    .add(&Poly::from_terms(
                        &chart,
                        [(crate::poly::Monomial(mono), gauss_rat(rng, 3, true))],
                    ))
                    .unwrap();
            }
            HoloBivector::new(&chart, [((a, b), f)]).unwrap()
        }
        2 => {
            // log-canonical: {z^i, z^j} = c_{ij} z^i z^j
            let mut entries = Vec::new();
            for i in 0..k {
                for j in (i + 1)..k {
                    if rng.gen_bool(0.7) {
                        let c = gauss_rat(rng, 3, true);
                        let p = Poly::var(&chart, chart.holo_var(i))
                            .mul(&Poly::var(&chart, chart.holo_var(j)))
                            .unwrap()
                            .scale(&c);
                        entries.push(((i, j), p));
                    }
                }
            }
            HoloBivector::new(&chart, entries).unwrap()
        }
        _ => HoloBivector::zero(&chart).unwrap(),
    }
}
