//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (run with `--nocapture` to see them). Timing bounds are
//! asserted where the criterion fixes one.

use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cube_profiles::construct::{base_case_table, construct_even, decide, Decision, Reason};
use cube_profiles::explorer::{
    binomial, face_decomposition_profiles, hamilton_profiles, lucas_parity,
    middle_layer_necessary_conditions, middle_layer_profiles, pair_list, permutahedron_profiles,
    PairWeighting, Parity,
};
use cube_profiles::matching::Dimension;
use cube_profiles::oracle::{exists_with_profile, SearchBudget, SearchStatus};
use cube_profiles::profile::{lift_half, o_statistic, precedes, Profile};
use cube_profiles::sweep::{oracle_agreement, perfect_even_profiles, verify_all_perfect_even};

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn p(counts: &[u64]) -> Profile {
    Profile::new(counts.to_vec())
}

fn pass(id: u32, name: &str, detail: impl std::fmt::Display) {
    println!("criterion {id:02} {name}: PASS ({detail})");
}

/// Uniform composition of `total` into `parts` nonnegative parts.
fn random_composition(rng: &mut ChaCha8Rng, total: u64, parts: usize) -> Vec<u64> {
    if parts == 1 {
        return vec![total];
    }
    let universe = (total as usize) + parts - 1;
    let mut cuts = rand::seq::index::sample(rng, universe, parts - 1).into_vec();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = -1i64;
    for &c in &cuts {
        out.push((c as i64 - prev - 1) as u64);
        prev = c as i64;
    }
    out.push((universe as i64 - 1 - prev) as u64);
    debug_assert_eq!(out.iter().sum::<u64>(), total);
    out
}

#[test]
fn c01_theorem_exhaustive_dimensions_2_to_6() {
    let start = Instant::now();
    let mut total = 0u64;
    for n in 2..=6u32 {
        let report = verify_all_perfect_even(dim(n));
        assert!(
            report.all_verified(),
            "n = {n} failures: {:?}",
            report.failures
        );
        // Stars and bars: compositions of 2^(n-2) into n parts.
        let expected = binomial((1u64 << (n - 2)) + n as u64 - 1, n as u64 - 1);
        assert_eq!(report.tuples, expected, "tuple count at n = {n}");
        total += report.tuples;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        1,
        "theorem-exhaustive-2-6",
        format_args!("{total} tuples in {elapsed:?}"),
    );
}

#[test]
fn c02_theorem_sampled_at_n16() {
    let n = dim(16);
    let mut rng = ChaCha8Rng::seed_from_u64(0x161616);
    let mut slowest = Duration::ZERO;
    for _ in 0..100 {
        let halves = random_composition(&mut rng, 1 << 14, 16);
        let x = Profile::new(halves.iter().map(|&h| 2 * h).collect());
        let start = Instant::now();
        let m = construct_even(&x, n).unwrap();
        m.verify(&x, true).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(1), "{x} took {elapsed:?}");
        assert_eq!(m.len(), 32768);
        assert!(m.uncovered().is_empty());
        slowest = slowest.max(elapsed);
    }
    pass(
        2,
        "theorem-sampled-n16",
        format_args!("100 tuples, slowest {slowest:?}"),
    );
}

#[test]
fn c03_oracle_equivalence_through_n4() {
    let budget = SearchBudget::default();
    let mut checked = 0u64;
    for n in 1..=4u32 {
        let report = oracle_agreement(dim(n), &budget).unwrap();
        assert!(
            report.agrees(),
            "n = {n} disagreements: {:?}",
            report.disagreements
        );
        assert!(
            report.below_half_all_admissible,
            "a profile with sum < 2^(n-1) was refuted at n = {n}"
        );
        checked += report.checked;
    }
    pass(
        3,
        "oracle-equivalence-n-le-4",
        format_args!("{checked} profiles, zero disagreements"),
    );
}

#[test]
fn c04_parity_obstruction() {
    // Exhaustive: no perfect matching of Q^n (2 <= n <= 4) has a profile
    // with an odd coordinate.
    let budget = SearchBudget::default();
    let mut refuted = 0u64;
    for n in 2..=4u32 {
        let d = dim(n);
        let mut current = vec![0u64; n as usize];
        let mut odd_perfect = Vec::new();
        expand_sum(&mut current, 0, d.half(), &mut |t| {
            if t.iter().sum::<u64>() == d.half() && t.iter().any(|&c| c % 2 == 1) {
                odd_perfect.push(Profile::new(t.to_vec()));
            }
        });
        for x in odd_perfect {
            let result = exists_with_profile(d, &x, &budget).unwrap();
            assert_eq!(
                result.status,
                SearchStatus::ExhaustedNone,
                "odd perfect profile {x} realized at n = {n}"
            );
            refuted += 1;
        }
    }

    // Randomized: decide never emits a witness for a perfect profile with
    // an odd coordinate, at any dimension.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0DD);
    for _ in 0..1000 {
        let n = rng.random_range(2..=16u32);
        let d = dim(n);
        let mut counts = random_composition(&mut rng, d.half(), n as usize);
        if counts.iter().all(|&c| c % 2 == 0) {
            let i = (0..counts.len()).max_by_key(|&i| counts[i]).unwrap();
            let j = (i + 1) % counts.len();
            counts[i] -= 1;
            counts[j] += 1;
        }
        let x = Profile::new(counts);
        let verdict = decide(&x, d, Some(&budget)).unwrap();
        assert_eq!(
            verdict,
            Decision::NotAdmissible(Reason::PerfectButOdd),
            "odd perfect profile {x} at n = {n} was not rejected"
        );
    }
    pass(
        4,
        "parity-obstruction",
        format_args!("{refuted} profiles refuted exhaustively, 1000 random rejections"),
    );
}

fn expand_sum(current: &mut Vec<u64>, pos: usize, left: u64, visit: &mut impl FnMut(&[u64])) {
    if pos == current.len() {
        visit(current);
        return;
    }
    for v in 0..=left {
        current[pos] = v;
        expand_sum(current, pos + 1, left - v, visit);
    }
    current[pos] = 0;
}

#[test]
fn c05_base_cases_derive_and_freeze() {
    let budget = SearchBudget::default();
    let start = Instant::now();
    let result = exists_with_profile(dim(5), &p(&[3, 3, 3, 3, 3]), &budget).unwrap();
    let elapsed = start.elapsed();
    let SearchStatus::Found(found) = result.status else {
        panic!("no (3,3,3,3,3) matching found in Q^5");
    };
    found.verify(&p(&[3, 3, 3, 3, 3]), false).unwrap();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");

    for base in base_case_table() {
        base.matching.verify(&base.profile, false).unwrap();
        let rederived = exists_with_profile(base.matching.dim(), &base.profile, &budget).unwrap();
        let SearchStatus::Found(m) = rederived.status else {
            panic!("base case {} not re-derived", base.profile);
        };
        assert_eq!(
            m.to_json(),
            base.matching.to_json(),
            "frozen base case {} is not byte-identical to the derivation",
            base.profile
        );
    }
    pass(
        5,
        "base-cases",
        format_args!("(3,3,3,3,3) found in {elapsed:?}; table byte-stable"),
    );
}

#[test]
fn c06_doubling_pipeline() {
    let base = &base_case_table()[1];
    assert_eq!(base.profile, p(&[1, 1, 1]));
    let doubled = base.matching.double_and_extend().unwrap();
    assert_eq!(doubled.profile(), p(&[2, 2, 2, 2]));
    doubled.verify(&p(&[2, 2, 2, 2]), true).unwrap();
    pass(6, "doubling-pipeline", "(1,1,1) doubles to (2,2,2,2)");
}

#[test]
fn c07_hamilton_profiles() {
    let budget = SearchBudget::default();
    let r3 = hamilton_profiles(dim(3), &budget).unwrap();
    let expected: std::collections::BTreeSet<Profile> =
        [p(&[4, 2, 2]), p(&[2, 4, 2]), p(&[2, 2, 4])]
            .into_iter()
            .collect();
    assert_eq!(r3.profiles, expected);
    assert_eq!(r3.conjectured, expected);

    let start = Instant::now();
    let r4 = hamilton_profiles(dim(4), &budget).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    for x in &r4.profiles {
        assert!(
            r4.conjectured.contains(x),
            "cycle profile {x} violates the counting constraints"
        );
    }
    let missing: Vec<_> = r4.conjectured.difference(&r4.profiles).collect();
    if missing.is_empty() {
        println!(
            "  n=4: exhaustive set equals the predicted set ({} profiles, {} cycles)",
            r4.profiles.len(),
            r4.cycles
        );
    } else {
        println!("  n=4 DISCREPANCY: predicted but unrealized: {missing:?}");
    }
    // Derived by this enumeration (and stable): the sets coincide at n = 4.
    assert!(missing.is_empty());
    assert_eq!(r4.cycles, 1344);
    pass(
        7,
        "hamilton-profiles",
        format_args!("n=3 exact; n=4 in {elapsed:?}"),
    );
}

#[test]
fn c08_face_decompositions_q4() {
    let report = face_decomposition_profiles(dim(4), &SearchBudget::default()).unwrap();
    assert!(report.decompositions > 0);

    // The candidate weighting w({1,2}) = w({3,4}) = 2, rest 0.
    let pairs = pair_list(4);
    let counts: Vec<u64> = pairs
        .iter()
        .map(|&(i, j)| u64::from((i, j) == (0, 1) || (i, j) == (2, 3)) * 2)
        .collect();
    let candidate = PairWeighting::from_label_counts(4, &counts);
    assert!(
        !report.weightings.contains(&candidate),
        "the impossible weighting was enumerated"
    );
    // Which constraint eliminates it: direction 1 would have 2*2 = 4 of
    // its 8 edges covered, so edge-count conservation fails outright
    // (parity alone would pass).
    assert_ne!(2 * candidate.direction_sum(0), 8);
    assert_eq!(candidate.direction_sum(0) % 2, 0);
    println!("  candidate w(12)=w(34)=2 eliminated by edge-count conservation, not parity");

    for w in &report.weightings {
        for i in 0..4 {
            let sum = w.direction_sum(i);
            assert_eq!(2 * sum, 8, "direction {i} edge conservation in {w:?}");
            assert_eq!(sum % 2, 0, "direction {i} parity in {w:?}");
        }
    }
    pass(
        8,
        "face-decompositions-q4",
        format_args!(
            "{} decompositions, {} weightings, candidate absent",
            report.decompositions,
            report.weightings.len()
        ),
    );
}

#[test]
fn c09_middle_layer() {
    let budget = SearchBudget::default();
    let r1 = middle_layer_profiles(1, &budget).unwrap();
    assert_eq!(
        r1.profiles,
        [p(&[1, 1, 1])].into_iter().collect(),
        "M_1 has exactly the all-ones profile"
    );

    let start = Instant::now();
    let r2 = middle_layer_profiles(2, &budget).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    for x in &r2.profiles {
        assert!(middle_layer_necessary_conditions(x, 2));
    }
    // Derived: the unique condition-satisfying tuple is realized.
    assert_eq!(r2.profiles, [p(&[2, 2, 2, 2, 2])].into_iter().collect());
    pass(
        9,
        "middle-layer",
        format_args!(
            "M_1 exact; M_2: {} matchings, profiles {:?} in {elapsed:?}",
            r2.matchings, r2.profiles
        ),
    );
}

#[test]
fn c10_permutahedron() {
    let budget = SearchBudget::default();
    let r2 = permutahedron_profiles(2, &budget).unwrap();
    assert_eq!(r2.matchings, 2, "Perm(2) has exactly 2 perfect matchings");
    assert_eq!(r2.weightings.len(), 1);
    let only = r2.weightings.iter().next().unwrap();
    assert!(
        only.pairs().all(|(_, c)| c == 1),
        "each direction used once"
    );

    let r3 = permutahedron_profiles(3, &budget).unwrap();
    assert!(r3.matchings > 0);
    for w in &r3.weightings {
        assert!(w.is_even(), "odd weighting {w:?}");
        assert_eq!(w.get(0, 1) + w.get(2, 3), 4);
        assert_eq!(w.get(0, 2) + w.get(1, 3), 4);
        assert_eq!(w.get(0, 3) + w.get(1, 2), 4);
    }
    pass(10, "permutahedron", format_args!(
        "Perm(2): 2 matchings all-ones; Perm(3): {} matchings, {} weightings onto the pair-sum polytope",
        r3.matchings,
        r3.weightings.len()
    ));
}

#[test]
fn c11_property_suites_timed() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x11_11);

    // Partial-order laws for coordinatewise domination.
    for _ in 0..1000 {
        let len = rng.random_range(1..=8usize);
        let a: Vec<u64> = (0..len).map(|_| rng.random_range(0..6)).collect();
        let b: Vec<u64> = a.iter().map(|&v| v + rng.random_range(0..4)).collect();
        let c: Vec<u64> = b.iter().map(|&v| v + rng.random_range(0..4)).collect();
        let (a, b, c) = (p(&a), p(&b), p(&c));
        assert!(precedes(&a, &a).unwrap());
        assert!(precedes(&a, &b).unwrap() && precedes(&b, &c).unwrap());
        assert!(precedes(&a, &c).unwrap());
        if precedes(&b, &a).unwrap() {
            assert_eq!(a, b);
        }
    }

    // Permutation equivariance of construct, decide, and the oracle.
    let budget = SearchBudget::default();
    let all_n4 = perfect_even_profiles(dim(4));
    for _ in 0..200 {
        let x = all_n4[rng.random_range(0..all_n4.len())].clone();
        let mut perm: Vec<u32> = (0..4).collect();
        perm.shuffle(&mut rng);
        let image = x.permuted(&perm).unwrap();
        construct_even(&image, dim(4))
            .unwrap()
            .verify(&image, true)
            .unwrap();

        let counts: Vec<u64> = (0..4).map(|_| rng.random_range(0..5)).collect();
        let y = p(&counts);
        let yi = y.permuted(&perm).unwrap();
        assert_eq!(
            decide(&y, dim(4), Some(&budget)).unwrap().summary(),
            decide(&yi, dim(4), Some(&budget)).unwrap().summary()
        );
        assert_eq!(
            matches!(
                exists_with_profile(dim(4), &y, &budget).unwrap().status,
                SearchStatus::Found(_)
            ),
            matches!(
                exists_with_profile(dim(4), &yi, &budget).unwrap().status,
                SearchStatus::Found(_)
            )
        );
    }

    // Halving-lift postcondition on 10^4 random applicable inputs.
    let mut accepted = 0u64;
    while accepted < 10_000 {
        let m = rng.random_range(3..=10usize);
        let cap = 1u64 << (m - 1);
        let mut x: Vec<u64> = (0..m)
            .map(|_| 2 * rng.random_range(0..=cap / (2 * m as u64)))
            .collect();
        x.sort_unstable();
        let x = p(&x);
        if x.sum() > cap as u128 || x.counts()[m - 1] < 2 * o_statistic(&x) as u64 {
            continue;
        }
        let lifted = lift_half(&x).unwrap();
        assert!(lifted.is_even());
        assert_eq!(lifted.sum(), (cap / 2) as u128);
        let halved = p(&x.counts()[..m - 1]
            .iter()
            .map(|&c| c / 2)
            .collect::<Vec<_>>());
        assert!(precedes(&halved, &lifted).unwrap());
        accepted += 1;
    }

    // Binomial parity against direct computation, exhaustively to 40.
    for top in 0..=40u64 {
        for bottom in 0..=top {
            let direct = if binomial(top, bottom) % 2 == 1 {
                Parity::Odd
            } else {
                Parity::Even
            };
            assert_eq!(lucas_parity(top, bottom).unwrap(), direct);
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    pass(
        11,
        "property-suites",
        format_args!("all four suites in {elapsed:?}"),
    );
}
