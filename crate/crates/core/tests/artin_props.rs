use milnor_core::artin::{
    artin_hom_rank, burnside_count, etale_from_matrix, orbit_count, recover_invariant,
    small_galois_groups, GSet, PermGroup,
};
use milnor_core::Error;
use proptest::prelude::*;

/// Random G-set: a disjoint union of coset spaces of subgroups.
fn gset(group: &PermGroup, picks: &[usize]) -> GSet {
    let subs = group.small_subgroups();
    let mut set = GSet::cosets(group, &subs[picks[0] % subs.len()]).unwrap();
    for &p in &picks[1..] {
        set = set.disjoint_union(&GSet::cosets(group, &subs[p % subs.len()]).unwrap());
    }
    set
}

fn group_and_sets() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (
        0usize..5,
        prop::collection::vec(0usize..8, 1..4),
        prop::collection::vec(0usize..8, 1..4),
    )
}

proptest! {
    #[test]
    fn hom_rank_is_symmetric((g, a, b) in group_and_sets()) {
        let group = small_galois_groups()[g].1.clone();
        let (sa, sb) = (gset(&group, &a), gset(&group, &b));
        prop_assert_eq!(artin_hom_rank(&sa, &sb), artin_hom_rank(&sb, &sa));
    }

    #[test]
    fn burnside_agrees_with_flood_fill((g, a, b) in group_and_sets()) {
        let group = small_galois_groups()[g].1.clone();
        let set = gset(&group, &a).product(&gset(&group, &b));
        prop_assert_eq!(orbit_count(&set), burnside_count(&set));
    }

    #[test]
    fn ingestion_accounts_for_every_eigenvalue(
        p in prop::sample::select(vec![2u64, 3, 5]),
        size in 2usize..6,
        seed in prop::collection::vec(0i64..5, 36),
    ) {
        let rows: Vec<Vec<i64>> = (0..size).map(|i| seed[i * 6..i * 6 + size].to_vec()).collect();
        match etale_from_matrix(p, &rows) {
            Ok(ing) => {
                prop_assert_eq!(ing.n + 1, size);
                prop_assert_eq!(ing.algebra.total_degree(), size);
                prop_assert_eq!(ing.hypothesis_satisfied, ing.algebra.satisfies_hypothesis());
            }
            Err(e) => prop_assert!(matches!(e, Error::NotRegularSemisimple(_))),
        }
    }
}

#[test]
fn rank_criterion_matches_subgroup_criterion() {
    for (name, group) in small_galois_groups() {
        let n = group.order() - 1;
        let normal: Vec<PermGroup> = group
            .small_subgroups()
            .into_iter()
            .filter(|h| h.is_normal_in(&group))
            .collect();
        for h in &normal {
            for h2 in &normal {
                let v = recover_invariant(n, &group, h, h2).unwrap();
                assert!(v.subgroup_criterion_agrees, "{name}: {h:?} vs {h2:?}");
                assert_eq!(v.isomorphic, h == h2, "{name}");
            }
        }
    }
}

#[test]
fn theorem_scenario_gives_n_plus_one() {
    for (_, group) in small_galois_groups() {
        let reg = GSet::regular(&group);
        let d = group.order();
        for m in 1..=3 {
            assert_eq!(artin_hom_rank(&reg, &reg.copies(m)), m * d);
        }
    }
}

#[test]
fn element_counts_divide_factorial() {
    for (_, group) in small_galois_groups() {
        let fact: usize = (1..=group.degree()).product();
        assert_eq!(fact % group.order(), 0);
    }
}
