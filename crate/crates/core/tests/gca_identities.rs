//! Exact identities of the generalized complex calculus on randomized data:
//! Clifford relation, Dorfman–Jacobi, B-transform compatibility,
//! integrability closure and the Chevalley nondegeneracy criterion.

use gcx_core::chart::Chart;
use gcx_core::exterior::{contract_covector, exp_wedge, Form, PolyVector};
use gcx_core::gca::{
    b_transform_section, chevalley, clifford_act, courant_bracket, pairing, GenSection,
};
use gcx_core::poly::Poly;
use gcx_core::sampling;
use gcx_core::scalar::GaussRat;
use std::sync::Arc;

#[test]
fn clifford_relation_randomized() {
    // u·(v·ρ) + v·(u·ρ) = 2⟨u,v⟩ρ, exact.
    let charts: Vec<Arc<Chart>> = vec![
        Chart::real(2),
        Chart::real(4),
        Chart::new(vec!["x1".into(), "x2".into()], vec!["z1".into()]).unwrap(),
    ];
    let mut rng = sampling::rng(10);
    for _ in 0..60 {
        for ch in &charts {
            let u = sampling::section(&mut rng, ch, 2);
            let v = sampling::section(&mut rng, ch, 2);
            let rho = sampling::form(&mut rng, ch, &[0, 1, 2], 2, 3);
            let lhs = clifford_act(&u, &clifford_act(&v, &rho).unwrap())
                .unwrap()
                .add(&clifford_act(&v, &clifford_act(&u, &rho).unwrap()).unwrap())
                .unwrap();
            let rhs = rho
                .scale_poly(&pairing(&u, &v).unwrap())
                .unwrap()
                .scale(&GaussRat::from_int(2));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pairing_symmetric_and_diagonal() {
    let ch = Chart::real(3);
    let mut rng = sampling::rng(11);
    for _ in 0..40 {
        let u = sampling::section(&mut rng, &ch, 2);
        let v = sampling::section(&mut rng, &ch, 2);
        assert_eq!(pairing(&u, &v).unwrap(), pairing(&v, &u).unwrap());
        // ⟨X+ξ, X+ξ⟩ = ξ(X)
        let diag = pairing(&u, &u).unwrap();
        let xi_x = gcx_core::exterior::contract(u.vector(), u.covector())
            .unwrap()
            .scalar_part();
        assert_eq!(diag, xi_x);
    }
}

#[test]
fn dorfman_jacobi_randomized() {
    // ⟦u,⟦v,w⟧⟧ = ⟦⟦u,v⟧,w⟧ + ⟦v,⟦u,w⟧⟧ with randomized closed H.
    let ch = Chart::real(4);
    let mut rng = sampling::rng(12);
    for _ in 0..30 {
        let h = sampling::closed_three_form(&mut rng, &ch, 2);
        let u = sampling::section(&mut rng, &ch, 2);
        let v = sampling::section(&mut rng, &ch, 2);
        let w = sampling::section(&mut rng, &ch, 2);
        let lhs = courant_bracket(&u, &courant_bracket(&v, &w, &h).unwrap(), &h).unwrap();
        let rhs = courant_bracket(&courant_bracket(&u, &v, &h).unwrap(), &w, &h)
            .unwrap()
            .add(&courant_bracket(&v, &courant_bracket(&u, &w, &h).unwrap(), &h).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn b_transform_preserves_pairing_and_clifford() {
    let ch = Chart::real(4);
    let mut rng = sampling::rng(13);
    for _ in 0..30 {
        let b = sampling::form(&mut rng, &ch, &[2], 2, 3);
        let u = sampling::section(&mut rng, &ch, 2);
        let v = sampling::section(&mut rng, &ch, 2);
        let tu = b_transform_section(&b, &u).unwrap();
        let tv = b_transform_section(&b, &v).unwrap();
        assert_eq!(pairing(&tu, &tv).unwrap(), pairing(&u, &v).unwrap());
        // e^B∧(u·ρ) = (e^B_* u)·(e^B∧ρ)
        let rho = sampling::form(&mut rng, &ch, &[0, 1, 2], 2, 3);
        let lhs = exp_wedge(&b, &clifford_act(&u, &rho).unwrap()).unwrap();
        let rhs = clifford_act(&tu, &exp_wedge(&b, &rho).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

/// Polynomial frame of the annihilator of `e^σ(dz1…dzk)`:
/// `T^{0,1}` plus `(1+σ)(dz_j)`.
fn poisson_dirac_frame(chart: &Arc<Chart>, sigma: &PolyVector) -> Vec<GenSection> {
    let mut sections = Vec::new();
    for j in 0..chart.n_holo() {
        sections.push(
            GenSection::from_vector(PolyVector::d_dvar(chart, chart.antiholo_var(j))).unwrap(),
        );
        let dz = Form::d_var(chart, chart.holo_var(j));
        let svec = contract_covector(&dz, sigma).unwrap();
        sections.push(GenSection::new(svec, dz).unwrap());
    }
    sections
}

#[test]
fn integrability_closure_for_poisson_spinor() {
    // Sections annihilating ρ = e^σΩ identically are closed under the
    // Courant bracket and keep annihilating ρ.
    let ch = Chart::holo(2);
    let z1 = Poly::var(&ch, ch.holo_var(0));
    let sigma = PolyVector::d_dvar(&ch, ch.holo_var(0))
        .wedge(&PolyVector::d_dvar(&ch, ch.holo_var(1)))
        .unwrap()
        .scale_poly(&z1)
        .unwrap();
    let omega = Form::d_var(&ch, ch.holo_var(0))
        .wedge(&Form::d_var(&ch, ch.holo_var(1)))
        .unwrap();
    let rho = gcx_core::exterior::exp_contract(&sigma, &omega).unwrap();
    let frame = poisson_dirac_frame(&ch, &sigma);
    let h = Form::zero(&ch);
    for u in &frame {
        assert!(clifford_act(u, &rho).unwrap().is_zero());
    }
    for u in &frame {
        for v in &frame {
            let br = courant_bracket(u, v, &h).unwrap();
            assert!(
                clifford_act(&br, &rho).unwrap().is_zero(),
                "bracket left the annihilator"
            );
        }
    }
}

#[test]
fn integrability_closure_for_symplectic_spinor() {
    let ch = Chart::real(4);
    let om = Form::d_var(&ch, 0)
        .wedge(&Form::d_var(&ch, 1))
        .unwrap()
        .add(&Form::d_var(&ch, 2).wedge(&Form::d_var(&ch, 3)).unwrap())
        .unwrap();
    let rho = exp_wedge(&om.scale(&GaussRat::i()), &Form::one(&ch)).unwrap();
    let h = Form::zero(&ch);
    // frame (1 − iω)∂_v
    let mut frame = Vec::new();
    for v in 0..4 {
        let x = PolyVector::d_dvar(&ch, v);
        let cov = gcx_core::exterior::contract(&x, &om)
            .unwrap()
            .scale(&-GaussRat::i());
        frame.push(GenSection::new(x, cov).unwrap());
    }
    for u in &frame {
        assert!(clifford_act(u, &rho).unwrap().is_zero());
        for v in &frame {
            let br = courant_bracket(u, v, &h).unwrap();
            assert!(clifford_act(&br, &rho).unwrap().is_zero());
        }
    }
}

#[test]
fn chevalley_nondegeneracy_matches_volume_criterion() {
    // For ρ = e^{B+iω}∧Ω with deg Ω = k on ℝ^{2n}:
    // (ρ, ρ̄)_Ch ≠ 0 at a point ⟺ ω^{n−k}∧Ω∧Ω̄ ≠ 0 there.
    let ch = Chart::real(4);
    let n = 2u32;
    let mut rng = sampling::rng(14);
    let mut seen_nonzero = 0;
    let mut seen_zero = 0;
    for _ in 0..120 {
        let b = sampling::form(&mut rng, &ch, &[2], 1, 2);
        // real B and ω: take real parts by averaging with conjugate
        let b = b.add(&b.conjugate()).unwrap();
        let om = {
            let w = sampling::form(&mut rng, &ch, &[2], 1, 2);
            w.add(&w.conjugate()).unwrap()
        };
        let k = rand::Rng::gen_range(&mut rng, 0..=2u32);
        let mut omega_factor = Form::one(&ch);
        for _ in 0..k {
            let one_form = sampling::form(&mut rng, &ch, &[1], 0, 2);
            omega_factor = omega_factor.wedge(&one_form).unwrap();
        }
        if omega_factor.is_zero() {
            continue;
        }
        let exponent = b.add(&om.scale(&GaussRat::i())).unwrap();
        let rho = exp_wedge(&exponent, &omega_factor).unwrap();
        let pair = chevalley(&rho, &rho.conjugate()).unwrap();
        // ω^{n−k} ∧ Ω ∧ Ω̄
        let mut crit = omega_factor.wedge(&omega_factor.conjugate()).unwrap();
        for _ in 0..(n - k) {
            crit = crit.wedge(&om).unwrap();
        }
        let pt = sampling::point(&mut rng, &ch, 2);
        let pair_nonzero = pair.eval(&pt).unwrap().values().any(|c| !c.is_zero());
        let crit_nonzero = crit.eval(&pt).unwrap().values().any(|c| !c.is_zero());
        assert_eq!(pair_nonzero, crit_nonzero);
        if pair_nonzero {
            seen_nonzero += 1;
        } else {
            seen_zero += 1;
        }
    }
    // the corpus must exercise both outcomes
    assert!(seen_nonzero > 0 && seen_zero > 0);
}
