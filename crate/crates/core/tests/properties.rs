mod common;

use exfam::arith::binomial;
use exfam::constructions::{
    aak_oracle, thm3_family, thm3_max_profile, thm3_oracle, thm3_rank, thm3_size,
    tight_rank_oracle, PartRule, PartwiseFamily,
};
use exfam::family::{scan_members, sort_canonical};
use exfam::format::{parse_family, serialize_family};
use exfam::verifiers::{check, check_both, recheck, Condition};
use exfam::{
    is_downward_closed, profile, rank, Family, GroundSet, MembershipOracle, Partition, SubsetMask,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn profile_invariants_hold(set: SubsetMask, part: &Partition) {
    let pv = profile(set, part).unwrap();
    let k = pv.part_size();
    for i in 0..=k {
        assert_eq!(pv.s(i), (i..=k).map(|j| pv.p(j)).sum::<usize>());
    }
    assert_eq!(pv.s(0), part.parts().len());
    let weighted: usize = (1..=k).map(|i| i * pv.p(i)).sum();
    assert_eq!(weighted, set.len());
    assert_eq!(pv.weight(), set.len());
}

#[test]
fn profile_invariants_exhaustive_small() {
    for (k, t) in [(1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1)] {
        let part = Partition::equal_blocks(k, t).unwrap();
        for bits in 0..1u64 << 12 {
            profile_invariants_hold(SubsetMask::from_bits(bits), &part);
        }
    }
}

proptest! {
    #[test]
    fn profile_invariants_random(k in 1usize..=8, t in 1usize..=8, bits in any::<u64>()) {
        let part = Partition::equal_blocks(k, t).unwrap();
        let set = SubsetMask::from_bits(bits) & part.ground().full();
        profile_invariants_hold(set, &part);
    }

    #[test]
    fn serialization_is_idempotent(n in 1usize..=10, raw in proptest::collection::vec(any::<u64>(), 0..40)) {
        let g = GroundSet::new(n).unwrap();
        let f = Family::explicit(g, raw.into_iter().map(|b| SubsetMask::from_bits(b) & g.full())).unwrap();
        let text = serialize_family(&f).unwrap();
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(back.members().unwrap(), f.members().unwrap());
        prop_assert_eq!(serialize_family(&back).unwrap(), text);
    }

    #[test]
    fn parse_canonicalises_any_order(n in 1usize..=8, raw in proptest::collection::hash_set(any::<u8>(), 0..30)) {
        let g = GroundSet::new(n).unwrap();
        let sets: std::collections::BTreeSet<u64> = raw.into_iter().map(|b| b as u64 & g.full().bits()).collect();
        let mut text = format!("# shuffled\nn {n}\n");
        for &b in sets.iter().rev() {
            text.push_str(&exfam::format::format_set_line(SubsetMask::from_bits(b)));
            text.push('\n');
        }
        let f = parse_family(&text).unwrap();
        let mut expected: Vec<SubsetMask> = sets.into_iter().map(SubsetMask::from_bits).collect();
        sort_canonical(&mut expected);
        prop_assert_eq!(f.members().unwrap(), expected);
    }
}

/// Full-definition check: every subset of every member is a member.
fn downward_closed_by_all_subsets(f: &Family) -> bool {
    f.members().unwrap().iter().all(|&a| {
        let mut sub = a.bits();
        loop {
            if !f.contains(SubsetMask::from_bits(sub)) {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & a.bits();
        }
    })
}

#[test]
fn one_element_deletions_match_full_definition() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for trial in 0..400 {
        let n = 1 + trial % 8;
        let f = if trial % 2 == 0 {
            common::random_atomic(n, trial as u64)
        } else {
            let gens: Vec<_> = (0..rng.gen_range(1..4))
                .map(|_| SubsetMask::from_bits(rng.gen_range(0..1u64 << n)))
                .collect();
            common::atomic_closure(n, &gens)
        };
        assert_eq!(
            is_downward_closed(&f).unwrap(),
            downward_closed_by_all_subsets(&f),
            "trial {trial}"
        );
    }
}

fn agree<R: PartRule>(oracle: &PartwiseFamily<R>) {
    let ground = oracle.ground();
    let by_predicate = scan_members(ground, |m| oracle.contains(m)).unwrap();
    let mut structured = oracle.enumerate_structured();
    structured.sort_unstable();
    let mut enumerated = oracle.enumerate().unwrap();
    enumerated.sort_unstable();
    assert_eq!(enumerated, by_predicate, "{}", oracle.describe());
    assert_eq!(structured, by_predicate, "{}", oracle.describe());
    assert_eq!(oracle.count_structured(), BigUint::from(by_predicate.len()));
}

#[test]
fn enumerators_match_predicates() {
    for s in 1..=12 {
        for t in 1..=12 / s {
            agree(&aak_oracle(s, t).unwrap());
        }
    }
    for n in 1..=12 {
        agree(&tight_rank_oracle(n).unwrap());
    }
    for (n, k) in [(6, 3), (9, 3), (12, 3)] {
        agree(&thm3_oracle(n, k).unwrap());
    }
    // overlap with the structured path used above the scan limit
    agree(&aak_oracle(4, 5).unwrap());
    agree(&thm3_oracle(16, 4).unwrap());
}

#[test]
fn structured_enumeration_beyond_scan_limit() {
    let f = aak_oracle(5, 5).unwrap();
    let members = f.enumerate().unwrap();
    assert_eq!(
        BigUint::from(members.len()),
        exfam::constructions::aak_size(5, 5)
    );
    let unique: std::collections::HashSet<_> = members.iter().collect();
    assert_eq!(unique.len(), members.len());
    assert!(members.iter().all(|&m| f.contains(m)));
}

#[test]
fn thm3_size_two_routes() {
    for (n, k) in [(6, 3), (9, 3), (12, 3), (16, 4)] {
        let enumerated = thm3_family(n, k).unwrap().len().unwrap();
        assert_eq!(
            thm3_size(n, k).unwrap(),
            BigUint::from(enumerated),
            "({n},{k})"
        );
    }
    for (n, k) in [(24, 3), (30, 3), (32, 4), (48, 4), (64, 4)] {
        assert_eq!(
            thm3_size(n, k).unwrap(),
            thm3_oracle(n, k).unwrap().count_structured(),
            "({n},{k})"
        );
    }
}

#[test]
fn thm3_max_profile_is_realised() {
    for (n, k) in [(6, 3), (9, 3), (12, 3), (16, 4), (32, 4), (64, 4)] {
        let pv = thm3_max_profile(n, k).unwrap();
        let t = n / k;
        let mut want_s = vec![1, 1];
        want_s.extend((1..=k - 3).map(|e| 1usize << e));
        want_s.extend([t, t]);
        assert_eq!(pv.at_least_desc(), &want_s[..], "({n},{k})");
        // realise the profile: parts in order take k, k-1, ... elements as dictated by p
        let part = Partition::equal_blocks(k, t).unwrap();
        let mut set = SubsetMask::EMPTY;
        let mut next_part = 0;
        for i in (1..=k).rev() {
            for _ in 0..pv.p(i) {
                let p = part.parts()[next_part];
                set |= p
                    .elements()
                    .take(i)
                    .fold(SubsetMask::EMPTY, |a, e| a.with(e));
                next_part += 1;
            }
        }
        assert_eq!(profile(set, &part).unwrap(), pv);
        assert_eq!(set.len(), thm3_rank(n, k).unwrap());
        let oracle = thm3_oracle(n, k).unwrap();
        assert!(oracle.contains(set));
        // adding any element leaves the family
        for e in part.ground().full().difference(set).elements() {
            assert!(!oracle.contains(set.with(e)));
        }
    }
    let pv = thm3_max_profile(6, 3).unwrap();
    assert_eq!(pv.at_least_desc(), &[1, 1, 2, 2]);
    assert_eq!(thm3_rank(32, 4).unwrap(), 12);
}

#[test]
fn downward_closed_constructions_are_large_and_bounded() {
    for (name, f) in common::construction_corpus(12) {
        let size = f.len().unwrap();
        let r = rank(&f).unwrap();
        assert!(is_downward_closed(&f).unwrap(), "{name}");
        assert!(size >= 1 << r, "{name}: |F|={size} < 2^{r}");
        if let Some(formula) = f.rank_formula() {
            assert_eq!(formula, r, "{name}");
        }
    }
    for (n, k) in [(6usize, 3usize), (9, 3), (12, 3)] {
        let f = thm3_family(n, k).unwrap();
        let r = rank(&f).unwrap();
        let cap: BigUint = (0..=r as u64).map(|i| binomial(n as u64, i)).sum();
        assert!(BigUint::from(f.len().unwrap()) <= cap);
    }
}

#[test]
fn aak_size_ordered_threshold() {
    for s in 1..=12usize {
        for t in 2..=12 / s {
            let v = check(
                &exfam::constructions::aak_family(s, t).unwrap(),
                Condition::SizeOrdered,
            )
            .unwrap();
            assert_eq!(v.passed(), s <= 4, "aak({s},{t})");
        }
    }
}

#[test]
fn witnesses_are_sound_on_random_families() {
    for seed in 0..150u64 {
        let f = if seed % 3 == 0 {
            common::random_atomic(2 + (seed % 4) as usize, seed)
        } else {
            common::random_downward_closed(seed)
        };
        for c in Condition::ALL {
            if let Some(w) = check(&f, c).unwrap().witness() {
                assert!(recheck(w, &f), "seed {seed}, {c}: {w}");
                if c != Condition::MatroidLike {
                    assert!(w.a.is_disjoint(w.b));
                }
            }
        }
    }
}

#[test]
fn both_closure_on_random_atomic_families() {
    for seed in 0..300u64 {
        let n = 1 + (seed % 4) as usize;
        let f = common::random_atomic(n, seed);
        if check_both(&f).unwrap().passed() {
            assert_eq!(f.len().unwrap(), 1 << n, "seed {seed}");
        }
    }
}

#[test]
fn witness_is_scan_order_minimal() {
    // brute-force the first failing pair in (|A|+|B|, A, B) order
    for seed in 0..60u64 {
        let f = common::random_downward_closed(seed);
        let members = f.members().unwrap();
        for c in Condition::ALL {
            let contains = |m: SubsetMask| f.contains(m);
            let mut pairs: Vec<(SubsetMask, SubsetMask)> = members
                .iter()
                .flat_map(|&a| members.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| exfam::verifiers::pair_qualifies(c, a, b))
                .collect();
            pairs.sort_by_key(|&(a, b)| (a.len() + b.len(), a, b));
            let first = pairs.into_iter().find(|&(a, b)| {
                exfam::verifiers::pair_violation(c, Default::default(), &contains, a, b).is_some()
            });
            let got = check(&f, c).unwrap().witness().map(|w| (w.a, w.b));
            assert_eq!(got, first, "seed {seed}, {c}");
        }
    }
}
