mod common;

use std::sync::OnceLock;

use algebroid::algebroid::families;
use algebroid::linalg;
use algebroid::va::{build_vb, induced_module, Certificate, GradedVA, VaError, VaVector};
use algebroid::{q, Scalar};
use common::consistent_families;
use proptest::prelude::*;

fn solvable() -> &'static GradedVA {
    static CELL: OnceLock<GradedVA> = OnceLock::new();
    CELL.get_or_init(|| build_vb(&families::dim2_solvable(&q("2")), 4, 4).unwrap())
}

fn type_c() -> &'static GradedVA {
    static CELL: OnceLock<GradedVA> = OnceLock::new();
    CELL.get_or_init(|| build_vb(&families::dim3_type_c(&q("0")), 3, 3).unwrap())
}

#[test]
fn low_degrees_are_a_and_b() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        let va = build_vb(&bundle, 3, 3).unwrap();
        assert_eq!(va.dim(0), bundle.a_dim(), "{}", family.name());
        assert_eq!(va.dim(1), bundle.b_dim(), "{}", family.name());
        assert_eq!(va.character().len(), 4);
    }
}

#[test]
fn unit_of_a_is_the_vacuum() {
    let va = build_vb(&families::dim2_nilpotent(&q("0")), 2, 2).unwrap();
    let one = va.a_state(&va.bundle().algebra().one());
    assert!(va.equal(&one, &va.vacuum()));
}

#[test]
fn translation_examples() {
    let va = solvable();
    let bundle = va.bundle();
    assert!(va.translation(&va.vacuum()).unwrap().is_zero());
    let a = bundle.a_basis(1);
    let da = va.b_state(&bundle.del(&a)).unwrap();
    assert!(va.equal(&va.translation(&va.a_state(&a)).unwrap(), &da));
    let b = bundle.b_basis(0);
    let b2 = va.state(&va.loop_algebra().b_mode(&b, -2)).unwrap();
    assert!(va.equal(&va.translation(&va.b_state(&b).unwrap()).unwrap(), &b2));
    let top = va.basis(4).into_iter().next().unwrap();
    assert!(matches!(va.translation(&top), Err(VaError::DegreeOverflow { .. })));
}

#[test]
fn generator_products() {
    for va in [solvable(), type_c()] {
        let bundle = va.bundle();
        let b = bundle.b_basis(0);
        let bs = va.b_state(&b).unwrap();
        let half_da = linalg::scale(&Scalar::ratio(1, 2), &bundle.del(&bundle.a_basis(1)));
        assert!(va.equal(&va.product(&bs, 0, &bs).unwrap(), &va.b_state(&half_da).unwrap()));
        assert!(va.equal(&va.product(&bs, 1, &bs).unwrap(), &va.a_state(&bundle.a_basis(1))));
        for i in 0..bundle.a_dim() {
            let a = bundle.a_basis(i);
            let a_s = va.a_state(&a);
            for j in 0..bundle.b_dim() {
                let f = bundle.b_basis(j);
                let lhs = va.product(&a_s, -1, &va.b_state(&f).unwrap()).unwrap();
                assert!(va.equal(&lhs, &va.b_state(&bundle.act(&a, &f)).unwrap()));
                let a0f = va.product(&a_s, 0, &va.b_state(&f).unwrap()).unwrap();
                let expected = linalg::scale(&Scalar::from(-1), &bundle.anchor(&f, &a));
                assert!(va.equal(&a0f, &va.a_state(&expected)));
            }
            for k in 0..bundle.a_dim() {
                let a2 = bundle.a_basis(k);
                let lhs = va.product(&a_s, -1, &va.a_state(&a2)).unwrap();
                assert!(va.equal(&lhs, &va.a_state(&bundle.mul(&a, &a2))));
            }
        }
    }
}

#[test]
fn vacuum_is_a_left_identity() {
    let va = solvable();
    for d in 0..=4 {
        for w in va.basis(d) {
            assert!(va.equal(&va.product(&va.vacuum(), -1, &w).unwrap(), &w));
        }
    }
}

#[test]
fn skew_symmetry_on_generators() {
    for va in [solvable(), type_c()] {
        let gens = va.generators().unwrap();
        for (lu, u) in &gens {
            for (lv, v) in &gens {
                assert!(va.check_skew_symmetry(u, v).unwrap(), "{lu}, {lv}");
            }
        }
    }
}

#[test]
fn commutator_examples() {
    let va = solvable();
    let bundle = va.bundle();
    let b = va.b_state(&bundle.b_basis(0)).unwrap();
    let a = va.a_state(&bundle.a_basis(1));
    assert!(va.check_commutator(&b, &b, 1, -1).unwrap());
    assert!(va.check_commutator(&a, &a, 0, -2).unwrap());
    assert!(va.check_commutator(&a, &b, 0, 0).unwrap());
    // b(1) b(-1) 1 = a
    let lie = va.loop_algebra();
    let x = va.apply(&lie.b_mode(&bundle.b_basis(0), -1), &va.vacuum()).unwrap();
    let y = va.apply(&lie.b_mode(&bundle.b_basis(0), 1), &x).unwrap();
    assert!(va.equal(&y, &a));
    assert!(va.fixpoint_holds().unwrap());
}

#[test]
fn quotients_by_radical_ideals() {
    let va = solvable();
    let same = va.degree0_ideal_quotient(&[]).unwrap();
    assert_eq!(same.character(), va.character());
    let radical = va.bundle().algebra().radical();
    let quotient = va.degree0_ideal_quotient(&radical).unwrap();
    let dims: Vec<usize> = quotient.character().iter().map(|g| g.dim).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5]);
    assert!(quotient.character().iter().all(|g| g.certificate == Certificate::Exact));
    let one = va.bundle().algebra().one();
    assert!(matches!(va.degree0_ideal_quotient(&[one]), Err(VaError::NotInRadical)));

    let nil = build_vb(&families::dim2_nilpotent(&q("0")), 2, 2).unwrap();
    let radical = nil.bundle().algebra().radical();
    let quotient = nil.degree0_ideal_quotient(&radical).unwrap();
    assert_eq!(quotient.dim(0), 1);
    assert_eq!(quotient.dim(1), 1);
}

#[test]
fn cap_is_checked_and_dims_are_stable() {
    let bundle = families::dim2_nilpotent(&q("1"));
    assert!(matches!(build_vb(&bundle, 4, 3), Err(VaError::CapTooSmall { cap: 3, degree: 4 })));
    let base = build_vb(&bundle, 4, 4).unwrap();
    for cap in [5, 6] {
        assert_eq!(build_vb(&bundle, 4, cap).unwrap().character(), base.character());
    }
}

#[test]
fn inconsistent_bundles_are_rejected() {
    let bundle = families::dim3_nilpotent(&q("1"), &q("0"));
    assert!(matches!(build_vb(&bundle, 2, 2), Err(VaError::NotAVertexAlgebroid(_))));
}

#[test]
fn induced_modules_have_the_ground_module_in_degree_zero() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        for lambda in ["0", "1"] {
            let m = induced_module(&bundle, &q(lambda), 3).unwrap();
            assert_eq!(m.induced[0], 1);
            assert_eq!(m.restricted[0].dim, 1);
            assert_eq!(m.simple[0], 1);
            assert!(m.methods_agree(), "{} lambda={lambda}", family.name());
            for d in 0..=3 {
                assert!(m.simple[d] <= m.restricted[d].dim && m.restricted[d].dim <= m.induced[d]);
            }
        }
    }
}

fn combination(va: &GradedVA, degree: usize, coeffs: &[i64]) -> VaVector {
    let mut out = VaVector::zero(degree);
    for (k, c) in coeffs.iter().enumerate() {
        if k < va.spanning_dim(degree) {
            out = out.add_scaled(&Scalar::from(*c), &VaVector { degree, coeffs: algebroid::linalg::SparseVec::unit(k) });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_idempotent_and_linear(d in 0usize..=4, x in proptest::collection::vec(-4i64..=4, 12), y in proptest::collection::vec(-4i64..=4, 12), c in -3i64..=3) {
        let va = solvable();
        let u = combination(va, d, &x);
        let w = combination(va, d, &y);
        let ru = va.reduce(&u);
        prop_assert_eq!(va.reduce(&ru), ru.clone());
        let lhs = va.reduce(&u.add_scaled(&Scalar::from(c), &w));
        let rhs = ru.add_scaled(&Scalar::from(c), &va.reduce(&w));
        prop_assert_eq!(lhs, rhs);
    }

    /// `(D u)_n v = -n u_{n-1} v`.
    #[test]
    fn translation_is_compatible_with_products(i in 0usize..4, j in 0usize..4, n in -2i64..=2) {
        let va = solvable();
        let gens = va.generators().unwrap();
        let (u, v) = (&gens[i].1, &gens[j].1);
        let du = va.translation(u).unwrap();
        let target = du.degree as i64 + v.degree as i64 - n - 1;
        if (0..=4).contains(&target) {
            let lhs = va.product(&du, n, v).unwrap();
            let rhs = va.product(u, n - 1, v).unwrap().scaled(&Scalar::from(-n));
            prop_assert!(va.equal(&lhs, &rhs));
        }
    }
}
