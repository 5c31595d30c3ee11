//! Exact identities of the exterior calculus on randomized polynomial forms.

use gcx_core::chart::Chart;
use gcx_core::exterior::{
    contract, exp_wedge, lie_derivative, radial_homotopy, Form, PolyVector,
};
use gcx_core::poly::Poly;
use gcx_core::sampling;
use gcx_core::scalar::GaussRat;
use std::sync::Arc;

fn mixed_chart() -> Arc<Chart> {
    Chart::new(vec!["x1".into(), "x2".into()], vec!["z1".into()]).unwrap()
}

#[test]
fn d_squared_vanishes() {
    let ch = mixed_chart();
    let mut rng = sampling::rng(2);
    for _ in 0..50 {
        let alpha = sampling::form(&mut rng, &ch, &[0, 1, 2], 3, 4);
        assert!(alpha.ext_d().ext_d().is_zero());
    }
}

#[test]
fn lie_derivative_leibniz() {
    // L_W(α∧β) = L_Wα ∧ β + α ∧ L_Wβ for degree-1 W (Cartan consistency).
    let ch = mixed_chart();
    let mut rng = sampling::rng(3);
    for _ in 0..25 {
        let w = sampling::polyvector(&mut rng, &ch, &[1], 2, 3);
        let a = sampling::form(&mut rng, &ch, &[0, 1], 2, 3);
        let b = sampling::form(&mut rng, &ch, &[0, 1, 2], 2, 3);
        let lhs = lie_derivative(&w, &a.wedge(&b).unwrap()).unwrap();
        let rhs = lie_derivative(&w, &a)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.wedge(&lie_derivative(&w, &b).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn lie_derivative_commutes_with_d() {
    let ch = mixed_chart();
    let mut rng = sampling::rng(4);
    for _ in 0..25 {
        let w = sampling::polyvector(&mut rng, &ch, &[1], 2, 3);
        let a = sampling::form(&mut rng, &ch, &[0, 1, 2], 2, 3);
        let lhs = lie_derivative(&w, &a).unwrap().ext_d();
        let rhs = lie_derivative(&w, &a.ext_d()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn transpose_is_involutive_antiautomorphism() {
    let ch = Chart::real(4);
    let mut rng = sampling::rng(5);
    for _ in 0..40 {
        let a = sampling::form(&mut rng, &ch, &[0, 1, 2, 3], 2, 3);
        assert_eq!(a.transpose().transpose(), a);
        // On homogeneous components: (α∧β)ᵀ = βᵀ∧αᵀ.
        for p in 0..=4u32 {
            for q in 0..=4u32 {
                let ap = a.component(p);
                let bq = sampling::form(&mut rng, &ch, &[q], 2, 2);
                let lhs = ap.wedge(&bq).unwrap().transpose();
                let rhs = bq.transpose().wedge(&ap.transpose()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn exponential_additivity() {
    // e^{B1}∧e^{B2}∧ρ = e^{B1+B2}∧ρ for 2-forms.
    let ch = Chart::real(6);
    let mut rng = sampling::rng(6);
    for _ in 0..20 {
        let b1 = sampling::form(&mut rng, &ch, &[2], 1, 3);
        let b2 = sampling::form(&mut rng, &ch, &[2], 1, 3);
        let rho = sampling::form(&mut rng, &ch, &[0, 1], 1, 2);
        let lhs = exp_wedge(&b1, &exp_wedge(&b2, &rho).unwrap()).unwrap();
        let rhs = exp_wedge(&b1.add(&b2).unwrap(), &rho).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn contraction_is_bilinear_derivation_for_vectors() {
    // ι_X(α∧β) = ι_Xα∧β + (−1)^{|α|} α∧ι_Xβ for degree-1 X.
    let ch = Chart::real(4);
    let mut rng = sampling::rng(7);
    for _ in 0..30 {
        let x = sampling::polyvector(&mut rng, &ch, &[1], 2, 2);
        for p in 0..=3u32 {
            let a = sampling::form(&mut rng, &ch, &[p], 2, 2);
            let b = sampling::form(&mut rng, &ch, &[0, 1, 2], 2, 2);
            let lhs = contract(&x, &a.wedge(&b).unwrap()).unwrap();
            let sign = if p % 2 == 0 {
                GaussRat::one()
            } else {
                -GaussRat::one()
            };
            let rhs = contract(&x, &a)
                .unwrap()
                .wedge(&b)
                .unwrap()
                .add(&a.wedge(&contract(&x, &b).unwrap()).unwrap().scale(&sign))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

/// Random closed form vanishing along the base: `d` of a form whose
/// coefficients all carry fiber degree ≥ 2.
fn random_base_vanishing_closed(
    rng: &mut rand_chacha::ChaCha20Rng,
    chart: &Arc<Chart>,
    fiber: &[usize],
) -> Form {
    loop {
        let beta = sampling::form(rng, chart, &[0, 1, 2], 2, 3);
        // multiply every coefficient by a random fiber monomial of degree 2
        let f1 = fiber[rand::Rng::gen_range(rng, 0..fiber.len())];
        let f2 = fiber[rand::Rng::gen_range(rng, 0..fiber.len())];
        let factor = Poly::var(chart, f1).mul(&Poly::var(chart, f2)).unwrap();
        let scaled = beta.scale_poly(&factor).unwrap();
        let alpha = scaled.ext_d();
        if !alpha.is_zero() {
            return alpha;
        }
    }
}

#[test]
fn radial_homotopy_randomized() {
    // dη = α exactly; η and its first partials vanish along the base.
    let ch = Chart::new(
        vec!["x1".into(), "t1".into(), "t2".into(), "t3".into(), "t4".into()],
        vec![],
    )
    .unwrap();
    let fiber = [1usize, 2, 3, 4];
    let mut rng = sampling::rng(8);
    for _ in 0..30 {
        let alpha = random_base_vanishing_closed(&mut rng, &ch, &fiber);
        let eta = radial_homotopy(&alpha, &fiber).unwrap();
        assert_eq!(eta.ext_d(), alpha);
        for (_, coeff) in eta.terms() {
            // coefficient and all its partials vanish at fiber = 0
            let vanishes = |p: &Poly| {
                p.terms()
                    .all(|(m, _)| fiber.iter().map(|&v| m.0[v]).sum::<u32>() >= 1)
            };
            assert!(vanishes(coeff));
            for v in 0..ch.nvars() {
                assert!(vanishes(&coeff.partial(v)));
            }
        }
    }
}

#[test]
fn euler_contraction_matches_weights() {
    // ι_V on a fiber-weight-w component followed by d recovers w·α for
    // closed homogeneous α (the scaling behind the homotopy operator).
    let ch = Chart::real(3);
    let fiber = [0usize, 1, 2];
    let x = Poly::var(&ch, 0);
    let dx = Form::d_var(&ch, 0);
    let dy = Form::d_var(&ch, 1);
    // α = d(x² dy), homogeneous of fiber weight 3
    let alpha = dy.scale_poly(&x.mul(&x).unwrap()).unwrap().ext_d();
    let mut euler = PolyVector::zero(&ch);
    for &v in &fiber {
        euler = euler
            .add(
                &PolyVector::d_dvar(&ch, v)
                    .scale_poly(&Poly::var(&ch, v))
                    .unwrap(),
            )
            .unwrap();
    }
    let lhs = contract(&euler, &alpha).unwrap().ext_d();
    assert_eq!(lhs, alpha.scale(&GaussRat::from_int(3)));
    let _ = dx;
}
