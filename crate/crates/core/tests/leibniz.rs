use algebroid::leibniz::{alpha_from_invariant, diagonal_invariant, normal_form, standard, AlphaRoots, CyclicType, LeibnizAlgebra};
use algebroid::linalg;
use algebroid::{q, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6).prop_map(|(a, b, c)| &Scalar::ratio(a, b) + &(&Scalar::from(c) * &Scalar::i()))
}

#[test]
fn standard_tables_classify_to_their_tags() {
    let cases = [
        (standard::nilpotent(), CyclicType::Nilpotent3),
        (standard::diagonal(&q("4")).unwrap(), CyclicType::Diagonal3),
        (standard::jordan(), CyclicType::Jordan3),
        (standard::non_split(), CyclicType::NonSplit3),
        (standard::two_dim(false), CyclicType::Dim2Null),
        (standard::two_dim(true), CyclicType::Dim2Idem),
    ];
    for (alg, tag) in cases {
        assert!(alg.check_left_leibniz().holds);
        assert!(!alg.is_lie());
        assert_eq!(alg.classify_cyclic(0).unwrap().cyclic_type, tag);
    }
}

#[test]
fn diagonal_table_gives_alpha_back() {
    let c = standard::diagonal(&q("4")).unwrap().classify_cyclic(7).unwrap();
    assert_eq!(c.scaling_invariant, Some(q("-25/4")));
    match c.alpha.unwrap() {
        AlphaRoots::Pair(x, y) => {
            let mut roots = [x.to_string(), y.to_string()];
            roots.sort();
            assert_eq!(roots, ["1/4".to_string(), "4".to_string()]);
        }
        other => panic!("expected rational roots, got {other:?}"),
    }
}

#[test]
fn abelian_and_heisenberg_brackets_are_lie() {
    let abelian = LeibnizAlgebra::new(2, vec![vec![linalg::zeros(2); 2]; 2]).unwrap();
    assert!(abelian.is_lie());
    assert!(abelian.classify_cyclic(0).is_err());
}

#[test]
fn broken_table_violates_the_identity() {
    // [x,x] = y, [y,x] = x is not left Leibniz
    let bad = LeibnizAlgebra::from_entries(2, &[(0, 0, vec![q("0"), q("1")]), (1, 0, vec![q("1"), q("0")])]);
    let check = bad.check_left_leibniz();
    assert!(!check.holds);
    assert!(check.witness.is_some());
}

#[test]
fn normal_forms_round_trip() {
    let cases = [
        (normal_form::nilpotent(), CyclicType::Nilpotent3),
        (normal_form::jordan(), CyclicType::Jordan3),
        (normal_form::non_split(), CyclicType::NonSplit3),
        (normal_form::diagonal(&q("2")).unwrap(), CyclicType::Diagonal3),
        (normal_form::diagonal(&q("1+i")).unwrap(), CyclicType::Diagonal3),
    ];
    for ((c0, c1), tag) in cases {
        let alg = LeibnizAlgebra::from_relation(&[c0.clone(), c1.clone()]);
        assert!(alg.check_left_leibniz().holds);
        let c = alg.classify_cyclic(3).unwrap();
        assert_eq!(c.cyclic_type, tag);
        if !c0.is_zero() {
            assert_eq!(c.scaling_invariant, Some(&(&c1 * &c1) / &c0));
        }
    }
    let jordan = LeibnizAlgebra::from_relation(&[normal_form::jordan().0, normal_form::jordan().1]);
    assert_eq!(jordan.classify_cyclic(0).unwrap().scaling_invariant, Some(q("-4")));
}

#[test]
fn diagonal_invariant_matches_normal_form() {
    for s in ["2", "3", "1+i", "-1/2", "2i"] {
        let s = q(s);
        let (c0, c1) = normal_form::diagonal(&s).unwrap();
        assert_eq!(diagonal_invariant(&s), &(&c1 * &c1) / &c0);
    }
    assert!(normal_form::diagonal(&q("1")).is_err());
    assert!(normal_form::diagonal(&q("-1")).is_err());
}

#[test]
fn irrational_alpha_is_reported() {
    // mu = 1: discriminant 5
    assert!(matches!(alpha_from_invariant(&q("1")), AlphaRoots::Irrational { .. }));
}

proptest! {
    /// Squares lie in the left centre: `[b^2, x] = 0`.
    #[test]
    fn squares_are_left_central(x in proptest::collection::vec(small_scalar(), 3), y in proptest::collection::vec(small_scalar(), 3)) {
        for alg in [standard::nilpotent(), standard::jordan(), standard::non_split(), standard::diagonal(&q("-3")).unwrap()] {
            let sq = alg.bracket(&x, &x);
            prop_assert!(linalg::is_zero_vec(&alg.bracket(&sq, &y)));
        }
    }

    /// Tag and invariant do not depend on the chosen generator or basis.
    #[test]
    fn classification_is_invariant(t in small_scalar(), s in small_scalar()) {
        prop_assume!(!t.is_zero());
        let alpha = &s * &s;
        prop_assume!(!s.is_zero() && alpha != Scalar::from(1));
        let base = LeibnizAlgebra::from_relation(&[Scalar::from(1), normal_form::diagonal(&s).unwrap().1]);
        let c = base.classify_cyclic(0).unwrap();
        let scaled = linalg::scale(&t, &c.form.generator);
        let again = base.classify_with_generator(&scaled).unwrap();
        prop_assert_eq!(again.cyclic_type, c.cyclic_type);
        prop_assert_eq!(&again.scaling_invariant, &c.scaling_invariant);
        prop_assert_eq!(c.scaling_invariant.clone().unwrap(), diagonal_invariant(&s));
        // triangular change of basis
        let basis = vec![
            vec![t.clone(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::from(1), t.clone(), Scalar::zero()],
            vec![s.clone(), Scalar::from(2), Scalar::from(1)],
        ];
        let moved = base.change_basis(&basis).unwrap();
        prop_assert!(moved.check_left_leibniz().holds);
        let c2 = moved.classify_cyclic(5).unwrap();
        prop_assert_eq!(c2.cyclic_type, CyclicType::Diagonal3);
        prop_assert_eq!(c2.scaling_invariant, c.scaling_invariant);
    }
}
