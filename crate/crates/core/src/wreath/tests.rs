use super::*;
use crate::groups::Catalogue;
use crate::linalg::Subspace;
use crate::reps::catalogue::{random_finite_rep, s3_standard, standard_irreps};

fn c2() -> GroupModel {
    Catalogue::Cyclic(2).build().unwrap()
}

fn c2_rep(signs: &[f64]) -> UnitaryRep {
    let diag = CVector::from_iterator(signs.len(), signs.iter().map(|&s| c(s, 0.0)));
    UnitaryRep::new(vec![crate::linalg::CMatrix::from_diagonal(&diag)]).unwrap()
}

fn uniform(g: &GroupModel) -> FinMeasure {
    FinMeasure::uniform_on_generators(g).unwrap()
}

#[test]
fn lamp_generator_name_avoids_clash() {
    let gamma = GroupModel::wreath(&c2()).unwrap();
    assert_eq!(gamma.generators(), ["t", "z"]);
    let gamma = GroupModel::wreath(&Catalogue::Symmetric3.build().unwrap()).unwrap();
    assert_eq!(gamma.generators(), ["s", "c", "t"]);
}

#[test]
fn lift_examples() {
    let g = c2();
    let gamma = GroupModel::wreath(&g).unwrap();
    let table = g.finite_table().unwrap();
    let sign = c2_rep(&[-1.0]);
    let zero = lift_cocycle(&g, &sign, Cocycle::zero(1, 1), CVector::zeros(1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        assert!(zero.evaluate_wr(&random_wreath_element(&mut rng, table, 3, 3)).norm() == 0.0);
    }
    let one = CVector::from_vec(vec![c(1.0, 0.0)]);
    let lifted = lift_cocycle(&g, &sign, Cocycle::zero(1, 1), one).unwrap();
    let e = table.identity();
    for n in -4..=4 {
        assert!((lifted.evaluate_wr(&WreathElement::lamp(e, e, n))[0] - c(n as f64, 0.0)).norm() < 1e-14);
    }
    // u·t·u⁻¹ is t in the copy at u
    let w = gamma.parse_word("t z t^-1").unwrap();
    let x = gamma.element_of_word(&w).unwrap();
    let Element::Wreath(x) = x else { panic!() };
    assert!((lifted.evaluate_wr(&x)[0] - c(-1.0, 0.0)).norm() < 1e-14);
    assert!((evaluate(&lifted.gamma_rep(), &lifted.gamma_cocycle(), &w)[0] - c(-1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn lifted_identity_holds_on_sampled_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for cat in [Catalogue::Cyclic(2), Catalogue::Symmetric3, Catalogue::Cyclic(4)] {
        let g = cat.build().unwrap();
        let gamma = GroupModel::wreath(&g).unwrap();
        let rep = random_finite_rep(&mut rng, cat, 3);
        let s = CocycleSpace::new(&g, &rep, &uniform(&g), Tolerances::default()).unwrap();
        let b1 = s.random_cocycle(&mut rng);
        let v = random_gaussian_vector(&mut rng, rep.dim());
        let lifted = lift_cocycle(&g, &rep, b1, v).unwrap();
        let r = lifted.check_identity(&gamma, &mut rng, 1000, 1e-8).unwrap();
        assert!(r < 1e-8);
    }
}

#[test]
fn decomposition_examples() {
    let g = c2();
    let d = wreath_har_decomposition(&g, &c2_rep(&[1.0, -1.0]), &uniform(&g), 0.5, Tolerances::default()).unwrap();
    assert_eq!((d.base_dim_har, d.dim_har, d.dim_rep), (0, 2, 2));
    assert!(d.harmonic_residual < 1e-10);
    let s3 = Catalogue::Symmetric3.build().unwrap();
    let d = wreath_har_decomposition(&s3, &s3_standard(), &uniform(&s3), 0.3, Tolerances::default()).unwrap();
    assert_eq!((d.base_dim_har, d.dim_har), (0, 2));
    assert_eq!(d.base_dim_z1, d.base_dim_b1);
    assert!(d.harmonic_residual < 1e-10);
    assert!(matches!(
        wreath_har_decomposition(&s3, &s3_standard(), &uniform(&s3), 1.0, Tolerances::default()),
        Err(WreathError::BadWeight(_))
    ));
}

#[test]
fn lifted_harmonicity_and_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s3 = Catalogue::Symmetric3.build().unwrap();
    let rep = random_finite_rep(&mut rng, Catalogue::Symmetric3, 4);
    let d = wreath_har_decomposition(&s3, &rep, &uniform(&s3), 0.5, Tolerances::default()).unwrap();
    let m = commutant(&rep, 1e-9);
    for _ in 0..20 {
        let v = random_gaussian_vector(&mut rng, rep.dim());
        let lifted = lift_cocycle(&s3, &rep, Cocycle::zero(2, rep.dim()), v.clone()).unwrap();
        assert!(lifted.mean(&d.measure).norm() < 1e-10);
        for t in m.basis() {
            let moved = lift_cocycle(&s3, &rep, Cocycle::zero(2, rep.dim()), t * &v).unwrap();
            let x = random_wreath_element(&mut rng, s3.finite_table().unwrap(), 3, 2);
            assert!((t * lifted.evaluate_wr(&x) - moved.evaluate_wr(&x)).norm() < 1e-10);
        }
    }
}

#[test]
fn cyclicity_verdicts() {
    let tol = Tolerances::default();
    let g = c2();
    let r = theorem3_exists_irreducible(&g, &c2_rep(&[1.0, -1.0]), tol, 5).unwrap();
    assert!(r.exists);
    assert_eq!(r.gamma_span_full, Some(true));
    assert_eq!(r.separating, Some(true));
    let r = theorem3_exists_irreducible(&g, &c2_rep(&[1.0, 1.0]), tol, 5).unwrap();
    assert!(!r.exists);
    assert_eq!(r.blocks, vec![(2, 1)]);
    let s3 = Catalogue::Symmetric3.build().unwrap();
    let r = theorem3_exists_irreducible(&s3, &s3_standard(), tol, 5).unwrap();
    assert!(r.exists);
    assert!(r.span_agreement.unwrap() < 1e-8);
    // (1, 1) is cyclic for trivial ⊕ sign
    let v = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
    assert!(invariant_span(&c2_rep(&[1.0, -1.0]), &[v], 1e-9).is_full());
}

#[test]
fn verdict_matches_multiplicity_rule_on_sums_of_irreps() {
    let tol = Tolerances::default();
    for cat in [Catalogue::Symmetric3, Catalogue::Quaternion, Catalogue::Dihedral(4)] {
        let g = cat.build().unwrap();
        let irreps = standard_irreps(cat);
        for (i, sigma) in irreps.iter().enumerate() {
            for m in 1..=3 {
                let rep = sigma.multiple(m).direct_sum(&irreps[(i + 1) % irreps.len()]);
                let r = theorem3_exists_irreducible(&g, &rep, tol, 9).unwrap();
                let expected = m <= sigma.dim();
                assert_eq!(r.exists, expected, "{} irrep {i} x{m}", g.name());
                if expected {
                    assert_eq!(r.separating, Some(true));
                    assert_eq!(r.gamma_span_full, Some(true));
                }
            }
        }
    }
}

#[test]
fn gamma_span_equals_invariant_span() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s3 = Catalogue::Symmetric3.build().unwrap();
    let rep = s3_standard().multiple(3);
    for _ in 0..10 {
        let v = random_gaussian_vector(&mut rng, rep.dim());
        let lifted = lift_cocycle(&s3, &rep, Cocycle::zero(2, rep.dim()), v.clone()).unwrap();
        let a = cocycle_span(&lifted.gamma_rep(), &lifted.gamma_cocycle(), 1e-9);
        let b: Subspace = invariant_span(&rep, &[v], 1e-9);
        assert_eq!(a.dim(), 4);
        assert!(a.same_as(&b, 1e-8));
    }
}
