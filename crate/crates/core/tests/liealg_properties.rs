//! Basis independence of degeneracy and classification, and the round trip
//! between Lie algebras and their linear Poisson structures.

use gcx_core::blowup::{conormal_algebra, linear_poisson, Center};
use gcx_core::chart::Chart;
use gcx_core::liealg::{
    classify_degenerate, degeneracy, jacobi_sc, DegenerateClass, FieldMarker, LieAlgebraSC,
};
use gcx_core::sampling;
use gcx_core::scalar::GaussRat;
use rand::Rng;

#[test]
fn degeneracy_is_basis_independent() {
    let mut rng = sampling::rng(31);
    for _ in 0..40 {
        let dim = rng.gen_range(2..=5usize);
        let g = sampling::lie_algebra(&mut rng, dim, FieldMarker::Complex);
        let (verdict, _) = degeneracy(&g).unwrap();
        let m = sampling::invertible_matrix(&mut rng, dim, true);
        let g2 = g.change_basis(&m).unwrap();
        let (verdict2, _) = degeneracy(&g2).unwrap();
        assert_eq!(verdict, verdict2);
    }
}

#[test]
fn degenerate_corpus_classifies() {
    // Every degenerate algebra in the randomized corpus classifies as
    // abelian or model — the executable classification claim.
    let mut rng = sampling::rng(32);
    let mut abelian = 0;
    let mut model = 0;
    for _ in 0..80 {
        let dim = rng.gen_range(2..=6usize);
        let g = sampling::lie_algebra(&mut rng, dim, FieldMarker::Complex);
        let (verdict, _) = degeneracy(&g).unwrap();
        if !verdict {
            continue;
        }
        match classify_degenerate(&g).unwrap() {
            DegenerateClass::Abelian => abelian += 1,
            DegenerateClass::Model(n) => {
                assert_eq!(n, dim);
                model += 1;
            }
            DegenerateClass::Violation(msg) => {
                panic!("degenerate algebra failed classification: {}", msg)
            }
        }
    }
    assert!(abelian > 0 && model > 0);
}

#[test]
fn conormal_round_trip_with_linear_poisson() {
    // σ built from g has conormal algebra g at the origin.
    let mut rng = sampling::rng(33);
    for _ in 0..25 {
        let dim = rng.gen_range(2..=4usize);
        let g = sampling::lie_algebra(&mut rng, dim, FieldMarker::Complex);
        let chart = Chart::holo(dim);
        let sigma = linear_poisson(&g, &chart).unwrap();
        assert!(sigma.jacobi_check().is_ok());
        let center = Center::new(&chart, dim).unwrap();
        let origin: Vec<GaussRat> = vec![GaussRat::zero(); dim];
        let back = conormal_algebra(&sigma, &center, &origin).unwrap();
        for i in 0..dim {
            for j in (i + 1)..dim {
                assert_eq!(back.bracket(i, j), g.bracket(i, j));
            }
        }
    }
}

#[test]
fn model_algebras_up_to_six() {
    for n in 2..=6 {
        let g = LieAlgebraSC::model(n, FieldMarker::Real);
        assert!(jacobi_sc(&g).is_ok());
        let (deg, _) = degeneracy(&g).unwrap();
        assert!(deg);
        assert_eq!(classify_degenerate(&g).unwrap(), DegenerateClass::Model(n));
        let ab = LieAlgebraSC::abelian(n, FieldMarker::Real);
        assert_eq!(classify_degenerate(&ab).unwrap(), DegenerateClass::Abelian);
    }
}

#[test]
fn rescaled_brackets_keep_classification() {
    let mut rng = sampling::rng(34);
    for _ in 0..20 {
        let dim = rng.gen_range(2..=5usize);
        let g = LieAlgebraSC::model(dim, FieldMarker::Complex);
        let m = sampling::invertible_matrix(&mut rng, dim, true);
        let g2 = g.change_basis(&m).unwrap();
        let scale = sampling::nonzero_gauss_rat(&mut rng, 3, true);
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = g2.bracket(i, j);
                brackets.push(((i, j), b.iter().map(|c| c * &scale).collect()));
            }
        }
        let g3 = LieAlgebraSC::new(dim, FieldMarker::Complex, brackets).unwrap();
        assert_eq!(classify_degenerate(&g3).unwrap(), DegenerateClass::Model(dim));
    }
}
