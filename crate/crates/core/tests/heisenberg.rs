
use algebroid::algebroid::families;
use algebroid::heisenberg::{
    build_m1, heisenberg_check, partition_count, partition_count_by_enumeration, partitions, HeisenbergError, Verdict,
};
use algebroid::va::Certificate;
use algebroid::{q, Scalar};
use num_traits::One;
use proptest::prelude::*;

/// Brute force: count non-increasing sequences summing to `n`.
fn brute_partitions(n: usize, max: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    (1..=n.min(max)).map(|k| brute_partitions(n - k, k)).sum()
}

#[test]
fn partition_counts_agree() {
    for n in 0..=30 {
        assert_eq!(partition_count(n), partition_count_by_enumeration(n), "n = {n}");
    }
    for n in 0..=18 {
        assert_eq!(partition_count(n), brute_partitions(n, n));
        assert_eq!(partitions(n).len() as u128, partition_count(n));
    }
    assert_eq!(partition_count(0), 1);
    assert_eq!(partition_count(4), 5);
    assert_eq!(partition_count(6), 11);
    assert_eq!(partition_count(100), 190_569_292);
}

#[test]
fn fock_dims_and_actions() {
    let m1 = build_m1(6);
    let dims: Vec<usize> = (0..=6).map(|d| m1.dim(d)).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
    let vac = m1.vacuum();
    let h1 = m1.apply_h(-1, &vac).unwrap();
    assert_eq!(m1.apply_h(1, &h1).unwrap(), vac);
    let h11 = m1.apply_h(-1, &h1).unwrap();
    assert!(m1.apply_h(2, &h11).unwrap().coeffs.is_zero());
    assert!(m1.apply_h(0, &h11).unwrap().coeffs.is_zero());
    assert!(m1.apply_h(-7, &vac).is_none());
}

#[test]
fn commutator_invariant_holds() {
    assert_eq!(build_m1(8).check_commutator(6), Ok(()));
}

#[test]
fn fock_products() {
    let m1 = build_m1(5);
    let vac = m1.vacuum();
    let h = m1.apply_h(-1, &vac).unwrap();
    // h_1 h = 1, h_0 h = 0, h_{-1} h = h(-1)^2 1
    assert_eq!(m1.product(&h, 1, &h).unwrap(), vac);
    assert!(m1.product(&h, 0, &h).unwrap().coeffs.is_zero());
    assert_eq!(m1.product(&h, -1, &h).unwrap(), m1.apply_h(-1, &h).unwrap());
    for d in 0..=3 {
        for k in 0..m1.dim(d) {
            let w = m1.basis_vector(d, k);
            assert_eq!(m1.product(&vac, -1, &w).unwrap(), w);
        }
    }
}

#[test]
fn solvable_family_is_heisenberg() {
    let report = heisenberg_check(&families::dim2_solvable(&q("2")), 5).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.failures);
    assert!(report.residue.is_one());
    assert_eq!(report.rescale_factor, Some(Scalar::one()));
    let dims: Vec<usize> = report.degrees.iter().map(|d| d.quotient_dim).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5, 7]);
    assert!(report.degrees.iter().all(|d| d.bijective && d.certificate == Certificate::Exact));
    assert!(report.vacuum_preserved);
    assert!(report.samples > 0);
}

#[test]
fn non_square_residue_degrades_to_dimensions() {
    let bundle = families::dim3_type_b(&q("2"), &q("1/2")).unwrap();
    let report = heisenberg_check(&bundle, 4).unwrap();
    assert_eq!(report.residue, q("3/2"));
    assert_eq!(report.verdict, Verdict::DimensionsOnly);
    assert!(report.skipped.is_some());
    assert!(report.degrees.iter().all(|d| d.bijective));
}

#[test]
fn nilpotent_family_is_rejected() {
    let err = heisenberg_check(&families::dim2_nilpotent(&q("0")), 3).unwrap_err();
    assert!(matches!(err, HeisenbergError::NotHeisenbergFamily(_)));
    assert!(err.to_string().starts_with("NotHeisenbergFamily"));
}

proptest! {
    #[test]
    fn partitions_are_valid(n in 0usize..=20) {
        for p in partitions(n) {
            prop_assert_eq!(p.iter().sum::<usize>(), n);
            prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
