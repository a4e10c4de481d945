mod common;

use common::*;
use hopftruss_core::group::{
    check_group_rbs, enumerate_group_rbs, extend_to_group_algebra, verify_group,
    verify_group_table, FiniteGroup, GroupEndo, GroupRBSystem, DEFAULT_MAX_ORDER,
};
use hopftruss_core::rbs::lemma_idm;
use hopftruss_core::{Error, Status};

fn enumerated(g: &FiniteGroup, fix_unit: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    enumerate_group_rbs(g, fix_unit, DEFAULT_MAX_ORDER)
        .unwrap()
        .into_iter()
        .map(|s| (s.b1.images, s.b2.images))
        .collect()
}

fn frozen(table: &[(&str, usize)], name: &str) -> Option<usize> {
    table.iter().find(|(n, _)| *n == name).map(|&(_, c)| c)
}

#[test]
fn standard_groups_verify() {
    for g in standard_groups() {
        assert!(verify_group(&g).passed(), "{}", g.name());
    }
    assert!(!FiniteGroup::symmetric(3).is_abelian());
}

#[test]
fn broken_tables_are_rejected() {
    // Not associative: a Latin square with identity 0 that is not a group.
    let t = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    let r = verify_group_table(&t);
    assert_eq!(r.status("GRP.assoc"), Some(Status::Fail));
    assert!(
        verify_group_table(&[vec![0, 1], vec![1, 1]])
            .failures()
            .count()
            > 0
    );
}

#[test]
fn small_groups_match_naive_oracle() {
    for n in [2, 3, 4] {
        let g = FiniteGroup::cyclic(n);
        for fix in [true, false] {
            let oracle = oracle_naive(&g, fix);
            assert_eq!(enumerated(&g, fix), oracle, "{} fix={fix}", g.name());
            let table = if fix {
                &FROZEN_UNIT_FIXED[..]
            } else {
                &FROZEN_ALL[..]
            };
            assert_eq!(Some(oracle.len()), frozen(table, g.name()));
        }
    }
}

#[test]
fn split_oracle_agrees_with_naive_oracle() {
    for n in [2, 3, 4] {
        let g = FiniteGroup::cyclic(n);
        for fix in [true, false] {
            assert_eq!(oracle_split(&g, fix), oracle_naive(&g, fix));
        }
    }
}

#[test]
fn s3_matches_split_oracle() {
    let g = FiniteGroup::symmetric(3);
    let oracle = oracle_split(&g, true);
    assert_eq!(Some(oracle.len()), frozen(&FROZEN_UNIT_FIXED, "S3"));
    assert_eq!(enumerated(&g, true), oracle);
}

#[test]
fn enumeration_refuses_large_groups() {
    let g = FiniteGroup::cyclic(9);
    assert!(matches!(
        enumerate_group_rbs(&g, true, DEFAULT_MAX_ORDER),
        Err(Error::EnumerationBound { .. })
    ));
}

#[test]
fn enumeration_is_thread_independent() {
    let g = FiniteGroup::symmetric(3);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| enumerated(&g, true));
    assert_eq!(single, enumerated(&g, true));
}

#[test]
fn every_enumerated_system_extends() {
    for g in standard_groups() {
        for s in enumerate_group_rbs(&g, true, DEFAULT_MAX_ORDER).unwrap() {
            assert!(check_group_rbs(&s).passed());
            let sys = extend_to_group_algebra(&s).unwrap();
            assert!(lemma_idm(&sys).passed());
        }
    }
}

#[test]
fn extension_needs_unit_fixed() {
    let g = FiniteGroup::cyclic(2);
    let unfixed: Vec<_> = oracle_naive(&g, false)
        .into_iter()
        .filter(|(b1, b2)| b1[0] != 0 || b2[0] != 0)
        .collect();
    assert!(!unfixed.is_empty());
    for (b1, b2) in unfixed {
        let s = GroupRBSystem::new(
            g.clone(),
            GroupEndo::new(&g, b1).unwrap(),
            GroupEndo::new(&g, b2).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            extend_to_group_algebra(&s),
            Err(Error::Precondition(_))
        ));
    }
}

#[test]
fn failing_pair_reports_witness() {
    let g = FiniteGroup::cyclic(2);
    let id = GroupEndo::identity(&g);
    let s = GroupRBSystem::new(g.clone(), id.clone(), id).unwrap();
    let r = check_group_rbs(&s);
    assert_eq!(r.status("GRB1"), Some(Status::Fail));
    assert!(r.get("GRB1").unwrap().witness.is_some());
}
