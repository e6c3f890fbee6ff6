mod common;

use exfam::constructions::{powerset_family, thm3_family};
use exfam::extraction::{extract_tree, validate_tree, Extraction};
use exfam::verifiers::{check, Condition};

#[test]
fn thm3_tree_is_a_size_certificate() {
    let f = thm3_family(12, 3).unwrap();
    let Extraction::Tree(tree) = extract_tree(&f, 2, 2).unwrap() else {
        panic!("extraction failed")
    };
    validate_tree(&f, &tree).unwrap();
    assert!(f.len().unwrap() >= tree.vertices.len());
}

#[test]
fn extraction_is_deterministic() {
    let f = thm3_family(12, 3).unwrap();
    let a = extract_tree(&f, 3, 2).unwrap();
    let b = extract_tree(&f, 3, 2).unwrap();
    assert_eq!(a, b);
}

#[test]
fn power_set_trees() {
    let f = powerset_family(6).unwrap();
    let Extraction::Tree(tree) = extract_tree(&f, 2, 2).unwrap() else {
        panic!()
    };
    assert_eq!(tree.vertices.len(), 7);
    let dump = tree.dump();
    assert_eq!(dump.lines().count(), 7);
    assert_eq!(dump.lines().next(), Some("0 - - 1,2"));
    // depth 3 needs 3 disjoint level sets of size 2 along each path
    assert!(matches!(
        extract_tree(&f, 2, 3).unwrap(),
        Extraction::Tree(_)
    ));
    assert!(matches!(
        extract_tree(&f, 3, 3).unwrap(),
        Extraction::Failed(_)
    ));
}

#[test]
fn outcomes_are_sound_on_random_families() {
    for seed in 0..200u64 {
        let f = common::random_downward_closed(seed);
        let n = f.ground().size();
        for (s, t) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)] {
            if s * t > n {
                continue;
            }
            match extract_tree(&f, s, t).unwrap() {
                Extraction::Tree(tree) => {
                    validate_tree(&f, &tree).unwrap();
                    assert!(f.len().unwrap() >= tree.vertices.len());
                }
                Extraction::Failed(fail) => {
                    assert!(f.contains(fail.member));
                    assert!(fail.available.len() < s);
                    for y in fail.blocked.elements() {
                        assert!(!f.contains(fail.member.with(y)), "seed {seed}");
                    }
                }
            }
        }
    }
}

#[test]
fn size_ordered_families_reach_the_guaranteed_shape() {
    // with n >= t^2/2 + t*s the level sets always exist for size-ordered families
    for seed in 0..200u64 {
        let f = common::random_downward_closed(seed);
        if !check(&f, Condition::SizeOrdered).unwrap().passed() {
            continue;
        }
        let n = f.ground().size();
        for (s, t) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (1, 3)] {
            if 2 * n >= t * t + 2 * t * s {
                assert!(
                    matches!(extract_tree(&f, s, t).unwrap(), Extraction::Tree(_)),
                    "seed {seed} ({s},{t})"
                );
            }
        }
    }
}
