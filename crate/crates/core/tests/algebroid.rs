mod common;

use algebroid::algebroid::families::{self, Family};
use algebroid::algebroid::{derive_dim3_constraints, AlgebroidError, VertexAlgebroid};
use algebroid::leibniz::{diagonal_invariant, CyclicType};
use algebroid::linalg;
use algebroid::{q, Scalar};
use common::{consistent_families, corrupt, displayed_products, table_samples};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn consistent_parameters_satisfy_every_identity() {
    for family in consistent_families() {
        let report = family.build().unwrap().check_axioms();
        assert!(report.all_passed(), "{}: {report}", family.name());
        assert_eq!(report.checks.len(), 28);
    }
}

#[test]
fn constructors_emit_the_displayed_products() {
    for family in table_samples() {
        for p in displayed_products(&family) {
            assert_eq!(p.emitted, p.displayed, "{} {:?}: {}", family.name(), family.params(), p.name);
        }
    }
}

#[test]
fn type_d_display_variant_reproduces_the_display() {
    for (g0, g1) in [("0", "0"), ("2", "1"), ("1", "-2")] {
        let (emitted, displayed) = common::type_d_displayed_a_da(&q(g0), &q(g1));
        assert_eq!(emitted, displayed);
    }
    let general = families::dim3_type_d(&q("2"), &q("1")).check_axioms();
    let shown = families::dim3_type_d_variant(&q("2"), &q("1"), families::TypeDVariant::Displayed).check_axioms();
    let name = "del(a*a') = a.del a' + a'.del a";
    assert!(general.get(name).unwrap().passed);
    assert!(!shown.get(name).unwrap().passed);
}

#[test]
fn del_a_is_twice_b0b() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        let b = bundle.b_basis(0);
        let twice = linalg::scale(&Scalar::from(2), &bundle.bracket(&b, &b));
        assert_eq!(bundle.del(&bundle.pairing(&b, &b)), twice, "{}", family.name());
    }
}

#[test]
fn leibniz_tags_match_families() {
    for family in common::table_samples() {
        let bundle = family.build().unwrap();
        let c = bundle.leibniz().classify_cyclic(0).unwrap();
        assert_eq!(c.cyclic_type, family.expected_type(), "{}", family.name());
        if let Family::Dim3TypeB { s, .. } = &family {
            assert_eq!(c.scaling_invariant, Some(diagonal_invariant(s)));
        }
        if let Family::Dim3TypeC { .. } = &family {
            assert_eq!(c.scaling_invariant, Some(q("-4")));
        }
    }
    assert_eq!(families::dim3_type_d(&q("1"), &q("-2")).leibniz().classify_cyclic(9).unwrap().cyclic_type, CyclicType::NonSplit3);
}

#[test]
fn profiles_of_consistent_families() {
    let expected = [
        "C[x]/(x^2)",
        "C[x]/(x^2)",
        "C[x,y]/(x^2,xy,y^2)",
        "C[x,y]/(x^2,xy,y^2)",
        "C[x,y]/(x^2,xy,y^2)",
        "C[x,y]/(x^2,xy,y^2)",
    ];
    for (family, template) in consistent_families().iter().zip(expected) {
        let bundle = family.build().unwrap();
        assert!(bundle.algebra().profile_matches(template).unwrap(), "{}", family.name());
    }
    let cubic = families::dim3_nilpotent(&q("4"), &q("0"));
    assert!(cubic.algebra().profile_matches("C[x]/(x^3)").unwrap());
}

#[test]
fn lie_quotient_is_one_dimensional_and_abelian() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        let lie = bundle.lie_algebroid_quotient().unwrap();
        assert_eq!(lie.q_dim, 1, "{}", family.name());
        assert!(lie.all_identities_hold(), "{}", family.name());
        let u = linalg::unit(1, 0);
        assert!(linalg::is_zero_vec(&lie.bracket(&u, &u)));
    }
}

#[test]
fn one_dimensional_modules() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        let modules = bundle.one_dim_modules().unwrap();
        for lambda in ["0", "1", "-2", "3/2", "i"] {
            let m = modules.standard(&q(lambda));
            let check = modules.verify(&m);
            assert!(check.passed, "{} lambda={lambda}: {:?}", family.name(), check.violations);
        }
        for k in 0..modules.radical.len() {
            let mut action = vec![Scalar::zero(); modules.radical.len()];
            action[k] = q("1");
            assert!(!modules.verify(&modules.module(&q("1"), &action)).passed);
        }
    }
}

#[test]
fn corrupted_pairing_is_detected() {
    let bundle = families::dim2_solvable(&q("2"));
    let broken = corrupt(&bundle, &["pairing1"], &[0, 1, 0], "5");
    let report = broken.check_axioms();
    assert!(!report.get("pairing is symmetric").unwrap().passed);
    assert!(!report.get("u_1 v = v_1 u").unwrap().passed);
}

#[test]
fn corrupted_unit_action_is_detected() {
    let bundle = families::dim3_type_c(&q("0"));
    let broken = corrupt(&bundle, &["action"], &[0, 0, 0], "2");
    assert!(!broken.check_axioms().get("1 . v = v").unwrap().passed);
}

#[test]
fn inconsistent_parameters_fail_the_checker() {
    assert!(!families::dim3_nilpotent(&q("1"), &q("-5")).check_axioms().all_passed());
    assert!(!families::dim3_type_d(&q("0"), &q("0")).check_axioms().all_passed());
    assert!(families::dim3_type_d(&q("0"), &q("0")).algebra().local_profile().is_err());
}

#[test]
fn constraint_derivation() {
    let d = derive_dim3_constraints(&q("0"), &q("1"), &q("1"), &q("-2")).unwrap();
    assert!(d.beta.is_zero());
    let c = derive_dim3_constraints(&q("1"), &q("2i"), &q("-4i"), &q("1")).unwrap();
    assert_eq!(c.beta, q("2"));
    assert!(matches!(
        derive_dim3_constraints(&q("1"), &q("0"), &q("1"), &q("0")),
        Err(AlgebroidError::InconsistentParameters(_))
    ));
}

#[test]
fn family_parameters_are_parsed() {
    let p = [("s".to_string(), q("2"))].into_iter().collect();
    assert!(Family::from_params("dim3_type_b", &p).is_ok());
    assert!(matches!(Family::from_params("dim3_type_b", &Default::default()), Err(AlgebroidError::MissingParameter(_))));
    assert!(matches!(Family::from_params("dim4", &Default::default()), Err(AlgebroidError::UnknownFamily(_))));
    assert!(matches!(Family::from_params("dim3_type_c", &p), Err(AlgebroidError::BadParameter(_))));
    assert!(families::dim3_type_b(&q("1"), &q("0")).is_err());
}

#[test]
fn json_round_trip() {
    for family in consistent_families() {
        let bundle = family.build().unwrap();
        let text = serde_json::to_string(&bundle).unwrap();
        let back: VertexAlgebroid = serde_json::from_str(&text).unwrap();
        assert_eq!(back.validated().unwrap(), bundle);
    }
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (-8i64..=8, 1i64..=4, -3i64..=3).prop_map(|(a, b, c)| &Scalar::ratio(a, b) + &(&Scalar::from(c) * &Scalar::i()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_dimensional_families_are_algebroids(x in gaussian()) {
        prop_assert!(families::dim2_nilpotent(&x).check_axioms().all_passed());
        prop_assert!(families::dim2_solvable(&x).check_axioms().all_passed());
    }

    #[test]
    fn three_dimensional_consistent_loci_are_algebroids(g in gaussian(), s in gaussian()) {
        prop_assert!(families::dim3_nilpotent(&Scalar::zero(), &g).check_axioms().all_passed());
        prop_assert!(families::dim3_type_c(&g).check_axioms().all_passed());
        let gamma0 = -(&g + &Scalar::from(1));
        prop_assert!(families::dim3_type_d(&gamma0, &g).check_axioms().all_passed());
        let alpha = &s * &s;
        if !s.is_zero() && alpha != Scalar::from(1) {
            prop_assert!(families::dim3_type_b(&s, &g).unwrap().check_axioms().all_passed());
        }
    }
}
