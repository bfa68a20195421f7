//! Property suites: order laws, group actions, structural invariants of
//! the matching transformations, and equivariance of the deciders.

use proptest::prelude::*;

use cube_profiles::construct::{construct_even, decide};
use cube_profiles::matching::{Dimension, Matching};
use cube_profiles::oracle::{exists_with_profile, SearchBudget, SearchStatus};
use cube_profiles::profile::{lift_half, o_statistic, precedes, Profile};

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

/// Even profile fitting dimension `n` together with a dominated target.
fn even_profile_with_target(n: u32) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    let len = n as usize;
    let half_edges = (1u64 << (n - 1)) / 2;
    prop::collection::vec(0..=half_edges.min(4), len)
        .prop_filter("fits in a matching", move |halves| {
            halves.iter().sum::<u64>() <= half_edges
        })
        .prop_flat_map(|halves| {
            let x: Vec<u64> = halves.iter().map(|&h| 2 * h).collect();
            let targets: Vec<_> = x.iter().map(|&c| 0..=c).collect();
            (Just(x), targets)
        })
}

fn permutation(len: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..len as u32).collect::<Vec<u32>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn precedes_is_reflexive(counts in prop::collection::vec(0u64..10, 1..8)) {
        let x = Profile::new(counts);
        prop_assert!(precedes(&x, &x).unwrap());
    }

    #[test]
    fn precedes_is_antisymmetric(
        a in prop::collection::vec(0u64..6, 4),
        b in prop::collection::vec(0u64..6, 4),
    ) {
        let (a, b) = (Profile::new(a), Profile::new(b));
        if precedes(&a, &b).unwrap() && precedes(&b, &a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn precedes_is_transitive(
        a in prop::collection::vec(0u64..4, 5),
        db in prop::collection::vec(0u64..4, 5),
        dc in prop::collection::vec(0u64..4, 5),
    ) {
        // b and c are built above a, so a <= b <= c by construction.
        let b: Vec<u64> = a.iter().zip(&db).map(|(x, d)| x + d).collect();
        let c: Vec<u64> = b.iter().zip(&dc).map(|(x, d)| x + d).collect();
        let (a, b, c) = (Profile::new(a), Profile::new(b), Profile::new(c));
        prop_assert!(precedes(&a, &b).unwrap());
        prop_assert!(precedes(&b, &c).unwrap());
        prop_assert!(precedes(&a, &c).unwrap());
    }

    #[test]
    fn permute_is_a_group_action(
        (x, _) in even_profile_with_target(4),
        p in permutation(4),
        q in permutation(4),
    ) {
        let m = construct_even(&Profile::new(x), dim(4)).unwrap();
        // Composition of actions equals action of compositions.
        let compose: Vec<u32> = (0..4).map(|i| q[p[i] as usize]).collect();
        let stepwise = m.permute_coordinates(&p).unwrap().permute_coordinates(&q).unwrap();
        prop_assert_eq!(m.permute_coordinates(&compose).unwrap(), stepwise);
    }

    #[test]
    fn permute_pushes_the_profile_forward(
        (x, _) in even_profile_with_target(5),
        p in permutation(5),
    ) {
        let x = Profile::new(x);
        let m = construct_even(&x, dim(5)).unwrap();
        let permuted = m.permute_coordinates(&p).unwrap();
        prop_assert_eq!(permuted.profile(), x.permuted(&p).unwrap());
    }

    #[test]
    fn double_and_extend_always_perfects(
        (x, target) in even_profile_with_target(4),
    ) {
        let m = construct_even(&Profile::new(x), dim(4)).unwrap()
            .delete_down(&Profile::new(target)).unwrap();
        let doubled = m.double_and_extend().unwrap();
        prop_assert!(doubled.is_perfect());
        prop_assert!(doubled.uncovered().is_empty());

        let x = m.profile();
        let mut expected: Vec<u64> = x.counts().iter().map(|&c| 2 * c).collect();
        expected.push((1u64 << 4) - 2 * x.counts().iter().sum::<u64>());
        prop_assert_eq!(doubled.profile(), Profile::new(expected));
        prop_assert_eq!(
            2 * m.len() as u64 + m.uncovered().len() as u64,
            16u64
        );
    }

    #[test]
    fn delete_down_hits_its_target_exactly(
        (x, target) in even_profile_with_target(5),
    ) {
        let m = construct_even(&Profile::new(x), dim(5)).unwrap();
        let target = Profile::new(target);
        let sub = m.delete_down(&target).unwrap();
        prop_assert_eq!(sub.profile(), target.clone());
        sub.verify(&target, false).unwrap();
    }

    #[test]
    fn lift_half_postconditions(
        halves in prop::collection::vec(0u64..6, 3..7),
    ) {
        let mut x: Vec<u64> = halves.iter().map(|&h| 2 * h).collect();
        x.sort_unstable();
        let m = x.len();
        prop_assume!(x.iter().sum::<u64>() <= 1 << (m - 1));
        let x = Profile::new(x);
        prop_assume!(x.counts()[m - 1] >= 2 * o_statistic(&x) as u64);

        let lifted = lift_half(&x).unwrap();
        prop_assert!(lifted.is_even());
        prop_assert_eq!(lifted.sum(), 1u128 << (m - 2));
        let halved = Profile::new(x.counts()[..m - 1].iter().map(|&c| c / 2).collect());
        prop_assert!(precedes(&halved, &lifted).unwrap());
    }

    #[test]
    fn construct_even_witnesses_verify(
        (x, _) in even_profile_with_target(6),
    ) {
        let x = Profile::new(x);
        let m = construct_even(&x, dim(6)).unwrap();
        let require_perfect = x.sum() == 1u128 << 5;
        m.verify(&x, require_perfect).unwrap();
    }

    #[test]
    fn decide_verdicts_are_permutation_equivariant(
        counts in prop::collection::vec(0u64..5, 4),
        p in permutation(4),
    ) {
        let budget = SearchBudget::default();
        let x = Profile::new(counts);
        let direct = decide(&x, dim(4), Some(&budget)).unwrap();
        let image = decide(&x.permuted(&p).unwrap(), dim(4), Some(&budget)).unwrap();
        prop_assert_eq!(direct.summary(), image.summary());
    }

    #[test]
    fn oracle_existence_is_permutation_invariant(
        counts in prop::collection::vec(0u64..4, 3),
        p in permutation(3),
    ) {
        let budget = SearchBudget::default();
        let x = Profile::new(counts);
        let a = exists_with_profile(dim(3), &x, &budget).unwrap();
        let b = exists_with_profile(dim(3), &x.permuted(&p).unwrap(), &budget).unwrap();
        prop_assert_eq!(
            matches!(a.status, SearchStatus::Found(_)),
            matches!(b.status, SearchStatus::Found(_))
        );
    }

    #[test]
    fn json_round_trip_preserves_matchings(
        (x, target) in even_profile_with_target(4),
    ) {
        let m = construct_even(&Profile::new(x), dim(4)).unwrap()
            .delete_down(&Profile::new(target)).unwrap();
        prop_assert_eq!(Matching::from_json(&m.to_json()).unwrap(), m.clone());
        prop_assert_eq!(
            Matching::from_edge_list(&m.to_edge_list(), m.dim()).unwrap(),
            m
        );
    }
}
