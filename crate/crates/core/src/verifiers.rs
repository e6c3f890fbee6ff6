//! Exchange-condition checkers with violation witnesses.
//!
//! Every checker scans ordered pairs `(A, B)` of members in ascending order of
//! `(|A| + |B|, A, B)`, comparing sets by the numeric value of their bit
//! vectors, and reports the first pair that fails. Parallel scans preserve
//! this order, so the witness does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::Result;
use crate::family::Family;
use crate::mask::SubsetMask;
use crate::partition::Partition;

/// The exchange conditions that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Disjoint `A, B`: some `a ∈ A` extends `B`, or some `b ∈ B` extends `A`.
    Weak,
    /// Disjoint `A, B`: some `a ∈ A`, `b ∈ B` with `B+a, A+b−a ∈ F` or `A+b, B+a−b ∈ F`.
    Cond3,
    /// `Weak`, and when `|A| < |B|` the extension must go from `B` into `A`.
    SizeOrdered,
    /// Disjoint `A, B` with `|A| ≤ |B|`: some `b ∈ B` extends `A`.
    StrongOrdered,
    /// Disjoint non-empty `A, B`: `B+a ∈ F` and `A+b ∈ F` for some `a ∈ A`, `b ∈ B`.
    Both,
    /// `|A| = |B|` and disjoint, or `|A| < |B|`: some `b ∈ B∖A` extends `A`.
    MatroidLike,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::Weak,
        Condition::Cond3,
        Condition::SizeOrdered,
        Condition::StrongOrdered,
        Condition::Both,
        Condition::MatroidLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Weak => "weak",
            Condition::Cond3 => "cond3",
            Condition::SizeOrdered => "ordered",
            Condition::StrongOrdered => "strong",
            Condition::Both => "both",
            Condition::MatroidLike => "matroid",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Condition::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown condition `{s}`"))
    }
}

/// Whether the matroid-like check may use `b ∈ A ∩ B` in the overlapping case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatroidReading {
    /// `b` must come from `B ∖ A`.
    #[default]
    ExcludeShared,
    /// Any `b ∈ B`; overlapping pairs then pass trivially.
    AllowShared,
}

/// A pair of members on which a condition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub a: SubsetMask,
    pub b: SubsetMask,
    pub detail: String,
}

impl fmt::Display for Witness {
    /// `VIOLATION <condition> A={..} B={..} <detail>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VIOLATION {} A={} B={} {}",
            self.condition, self.a, self.b, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violation(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Violation(w) => Some(w),
        }
    }
}

// ---------------------------------------------------------------------------
// single-pair checks

fn some_extends<C: Fn(SubsetMask) -> bool>(
    contains: &C,
    target: SubsetMask,
    from: SubsetMask,
) -> bool {
    from.elements().any(|x| contains(target.with(x)))
}

/// Whether the ordered pair is in scope for `condition`.
pub fn pair_qualifies(condition: Condition, a: SubsetMask, b: SubsetMask) -> bool {
    match condition {
        Condition::MatroidLike => (a.len() == b.len() && a.is_disjoint(b)) || a.len() < b.len(),
        Condition::Both => a.is_disjoint(b) && !a.is_empty() && !b.is_empty(),
        _ => a.is_disjoint(b),
    }
}

/// Checks one qualifying pair. Returns the failed clause on violation.
pub fn pair_violation<C: Fn(SubsetMask) -> bool>(
    condition: Condition,
    reading: MatroidReading,
    contains: &C,
    a: SubsetMask,
    b: SubsetMask,
) -> Option<&'static str> {
    if a.is_empty() && b.is_empty() {
        return None;
    }
    match condition {
        Condition::Weak => weak_fails(contains, a, b),
        Condition::Cond3 => {
            let ok = if a.is_empty() || b.is_empty() {
                // the empty side contributes no element: move x from N into E
                let (e, n) = if a.is_empty() { (a, b) } else { (b, a) };
                n.elements()
                    .any(|x| contains(e.with(x)) && contains(n.without(x)))
            } else {
                a.elements().any(|x| {
                    b.elements().any(|y| {
                        (contains(b.with(x)) && contains(a.with(y).without(x)))
                            || (contains(a.with(y)) && contains(b.with(x).without(y)))
                    })
                })
            };
            (!ok).then_some("no a in A, b in B satisfies either swap clause")
        }
        Condition::SizeOrdered => weak_fails(contains, a, b).or_else(|| {
            (a.len() < b.len() && !some_extends(contains, a, b))
                .then_some("|A|<|B| but no b in B with A+b in F")
        }),
        Condition::StrongOrdered => (a.len() <= b.len() && !some_extends(contains, a, b))
            .then_some("|A|<=|B| but no b in B with A+b in F"),
        Condition::Both => {
            let from_a = some_extends(contains, b, a);
            let from_b = some_extends(contains, a, b);
            match (from_a, from_b) {
                (true, true) => None,
                (false, true) => Some("no a in A with B+a in F"),
                (true, false) => Some("no b in B with A+b in F"),
                (false, false) => Some("no a in A with B+a in F and no b in B with A+b in F"),
            }
        }
        Condition::MatroidLike => {
            let pool = match reading {
                MatroidReading::ExcludeShared => b.difference(a),
                MatroidReading::AllowShared => b,
            };
            (!some_extends(contains, a, pool)).then_some("no b in B\\A with A+b in F")
        }
    }
}

fn weak_fails<C: Fn(SubsetMask) -> bool>(
    contains: &C,
    a: SubsetMask,
    b: SubsetMask,
) -> Option<&'static str> {
    (!some_extends(contains, b, a) && !some_extends(contains, a, b))
        .then_some("no a in A with B+a in F and no b in B with A+b in F")
}

// ---------------------------------------------------------------------------
// scans

/// Scans the members in witness order and returns the first violation.
pub fn find_violation<C>(
    members: &[SubsetMask],
    contains: &C,
    condition: Condition,
    reading: MatroidReading,
) -> Option<Witness>
where
    C: Fn(SubsetMask) -> bool + Sync,
{
    let mut by_value = members.to_vec();
    by_value.sort_unstable();
    by_value.dedup();
    let max_len = by_value.iter().map(|m| m.len()).max()?;
    let mut buckets: Vec<Vec<SubsetMask>> = vec![Vec::new(); max_len + 1];
    for &m in &by_value {
        buckets[m.len()].push(m);
    }

    let probe = |a: SubsetMask, d: usize| -> Option<Witness> {
        let la = a.len();
        if la > d || d - la > max_len {
            return None;
        }
        buckets[d - la].iter().find_map(|&b| {
            if !pair_qualifies(condition, a, b) {
                return None;
            }
            pair_violation(condition, reading, contains, a, b).map(|detail| Witness {
                condition,
                a,
                b,
                detail: detail.to_string(),
            })
        })
    };

    for d in 0..=2 * max_len {
        let hit = if by_value.len() >= 256 {
            by_value.par_iter().find_map_first(|&a| probe(a, d))
        } else {
            by_value.iter().find_map(|&a| probe(a, d))
        };
        if hit.is_some() {
            return hit;
        }
    }
    None
}

pub fn check(family: &Family, condition: Condition) -> Result<Verdict> {
    check_with(family, condition, MatroidReading::default())
}

pub fn check_with(
    family: &Family,
    condition: Condition,
    reading: MatroidReading,
) -> Result<Verdict> {
    let (members, index) = family.indexed()?;
    let contains = |m: SubsetMask| index.contains(m);
    Ok(
        match find_violation(&members, &contains, condition, reading) {
            None => Verdict::Pass,
            Some(w) => Verdict::Violation(w),
        },
    )
}

pub fn check_weak_exchange(family: &Family) -> Result<Verdict> {
    check(family, Condition::Weak)
}

pub fn check_condition3(family: &Family) -> Result<Verdict> {
    check(family, Condition::Cond3)
}

pub fn check_size_ordered(family: &Family) -> Result<Verdict> {
    check(family, Condition::SizeOrdered)
}

pub fn check_strong_ordered(family: &Family) -> Result<Verdict> {
    check(family, Condition::StrongOrdered)
}

pub fn check_both(family: &Family) -> Result<Verdict> {
    check(family, Condition::Both)
}

pub fn check_matroid_like(family: &Family) -> Result<Verdict> {
    check(family, Condition::MatroidLike)
}

/// Re-runs the single-pair check: true iff both sets are members, the pair
/// qualifies, and the condition still fails on it.
pub fn recheck(witness: &Witness, family: &Family) -> bool {
    recheck_with(witness, family, MatroidReading::default())
}

pub fn recheck_with(witness: &Witness, family: &Family, reading: MatroidReading) -> bool {
    let contains = |m: SubsetMask| family.contains(m);
    family.contains(witness.a)
        && family.contains(witness.b)
        && pair_qualifies(witness.condition, witness.a, witness.b)
        && pair_violation(witness.condition, reading, &contains, witness.a, witness.b).is_some()
}

/// The explicit size-ordered violation in the block construction with `s ≥ 5`:
/// `A = {a1, a2, a2'}` with `a1 ∈ X_1` and `a2, a2' ∈ X_2`, and `B = X_1 ∖ {a1}`.
/// Returns `None` for `s ≤ 4` (or `t < 2`), where no such pair exists.
pub fn find_thm2_violation_in_aak(s: usize, t: usize) -> Result<Option<Witness>> {
    if s <= 4 || t < 2 {
        return Ok(None);
    }
    let family = crate::constructions::aak_family(s, t)?;
    let parts = Partition::equal_blocks(s, t)?;
    let x1 = parts.parts()[0];
    let x2 = parts.parts()[1];
    let a1 = x1.min_element().expect("non-empty part");
    let mut x2_elems = x2.elements();
    let (a2, a2p) = (x2_elems.next().unwrap(), x2_elems.next().unwrap());
    let a = SubsetMask::of(&[a1, a2, a2p]);
    let b = x1.without(a1);
    let witness = Witness {
        condition: Condition::SizeOrdered,
        a,
        b,
        detail: "|A|<|B| but no b in B with A+b in F".to_string(),
    };
    assert!(
        recheck(&witness, &family),
        "explicit witness failed validation"
    );
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{aak_family, powerset_family, thm3_family, tight_rank_family};
    use crate::mask::GroundSet;

    fn fam(n: usize, sets: &[&[u32]]) -> Family {
        Family::explicit(
            GroundSet::new(n).unwrap(),
            sets.iter().map(|s| SubsetMask::of(s)),
        )
        .unwrap()
    }

    fn violation(v: Verdict) -> Witness {
        match v {
            Verdict::Violation(w) => w,
            Verdict::Pass => panic!("expected a violation"),
        }
    }

    #[test]
    fn weak_examples() {
        assert!(check_weak_exchange(&powerset_family(4).unwrap())
            .unwrap()
            .passed());
        let w = violation(check_weak_exchange(&fam(2, &[&[], &[1], &[2]])).unwrap());
        assert_eq!((w.a, w.b), (SubsetMask::of(&[1]), SubsetMask::of(&[2])));
        assert!(check_weak_exchange(&tight_rank_family(3).unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn cond3_examples() {
        assert!(check_condition3(&aak_family(2, 2).unwrap())
            .unwrap()
            .passed());
        assert!(check_condition3(&powerset_family(3).unwrap())
            .unwrap()
            .passed());
        let f = fam(3, &[&[], &[1], &[2], &[1, 2], &[3]]);
        let w = violation(check_condition3(&f).unwrap());
        assert!(recheck(&w, &f));
        assert_eq!((w.a, w.b), (SubsetMask::of(&[1]), SubsetMask::of(&[3])));
    }

    #[test]
    fn size_ordered_examples() {
        assert!(check_size_ordered(&aak_family(4, 2).unwrap())
            .unwrap()
            .passed());
        assert!(check_size_ordered(&thm3_family(6, 3).unwrap())
            .unwrap()
            .passed());
        let f = aak_family(5, 2).unwrap();
        let w = violation(check_size_ordered(&f).unwrap());
        assert_eq!((w.a.len(), w.b.len()), (3, 4));
        assert!(recheck(&w, &f));
    }

    #[test]
    fn strong_examples() {
        assert!(check_strong_ordered(&thm3_family(6, 3).unwrap())
            .unwrap()
            .passed());
        let p = powerset_family(4).unwrap().members().unwrap();
        let minus: Vec<_> = p
            .into_iter()
            .filter(|&m| m != SubsetMask::of(&[1, 2]))
            .collect();
        let f = Family::explicit(GroundSet::new(4).unwrap(), minus).unwrap();
        let w = violation(check_strong_ordered(&f).unwrap());
        assert!(recheck(&w, &f));
        assert_eq!((w.a, w.b), (SubsetMask::of(&[1]), SubsetMask::of(&[2])));
        let singles = fam(3, &[&[], &[1], &[2], &[3]]);
        let w = violation(check_strong_ordered(&singles).unwrap());
        assert_eq!((w.a, w.b), (SubsetMask::of(&[1]), SubsetMask::of(&[2])));
    }

    #[test]
    fn both_examples() {
        for n in 0..=6 {
            assert!(check_both(&powerset_family(n).unwrap()).unwrap().passed());
        }
        let f = aak_family(2, 2).unwrap();
        let w = violation(check_both(&f).unwrap());
        assert!(recheck(&w, &f));
        assert!(check_both(&fam(2, &[&[], &[1], &[2], &[1, 2]]))
            .unwrap()
            .passed());
    }

    fn uniform_matroid(r: usize, n: usize) -> Family {
        let sets: Vec<_> = powerset_family(n)
            .unwrap()
            .members()
            .unwrap()
            .into_iter()
            .filter(|m| m.len() <= r)
            .collect();
        Family::explicit(GroundSet::new(n).unwrap(), sets).unwrap()
    }

    #[test]
    fn matroid_examples() {
        assert!(check_matroid_like(&powerset_family(4).unwrap())
            .unwrap()
            .passed());
        // U(3,4): bases pairwise intersect, so equal-size disjoint pairs can always grow
        assert!(check_matroid_like(&uniform_matroid(3, 4)).unwrap().passed());
        // U(2,4) has the disjoint bases {1,2} and {3,4}, neither of which extends
        let f = uniform_matroid(2, 4);
        let w = violation(check_matroid_like(&f).unwrap());
        assert_eq!(
            (w.a, w.b),
            (SubsetMask::of(&[1, 2]), SubsetMask::of(&[3, 4]))
        );
        assert!(recheck(&w, &f));
    }

    #[test]
    fn matroid_readings_differ_on_overlap() {
        // downward closure of {1,2} and {1,3,4}
        let f = fam(
            4,
            &[
                &[],
                &[1],
                &[2],
                &[3],
                &[4],
                &[1, 2],
                &[1, 3],
                &[1, 4],
                &[3, 4],
                &[1, 3, 4],
            ],
        );
        let contains = |m: SubsetMask| f.contains(m);
        let (a, b) = (SubsetMask::of(&[1, 2]), SubsetMask::of(&[1, 3, 4]));
        assert!(pair_qualifies(Condition::MatroidLike, a, b));
        assert!(pair_violation(
            Condition::MatroidLike,
            MatroidReading::ExcludeShared,
            &contains,
            a,
            b
        )
        .is_some());
        assert!(pair_violation(
            Condition::MatroidLike,
            MatroidReading::AllowShared,
            &contains,
            a,
            b
        )
        .is_none());
        // both readings still reject the family through the disjoint pair ({2}, {3})
        let strict = violation(
            check_with(&f, Condition::MatroidLike, MatroidReading::ExcludeShared).unwrap(),
        );
        let loose =
            violation(check_with(&f, Condition::MatroidLike, MatroidReading::AllowShared).unwrap());
        assert_eq!(strict, loose);
        assert_eq!(
            (loose.a, loose.b),
            (SubsetMask::of(&[2]), SubsetMask::of(&[3]))
        );
    }

    #[test]
    fn thm2_explicit_witness() {
        let w = find_thm2_violation_in_aak(5, 2).unwrap().unwrap();
        assert_eq!((w.a.len(), w.b.len()), (3, 4));
        assert!(find_thm2_violation_in_aak(4, 2).unwrap().is_none());
        let w = find_thm2_violation_in_aak(6, 3).unwrap().unwrap();
        assert_eq!((w.a.len(), w.b.len()), (3, 5));
    }

    #[test]
    fn condition_names_round_trip() {
        for c in Condition::ALL {
            assert_eq!(c.name().parse::<Condition>().unwrap(), c);
        }
        assert!("nope".parse::<Condition>().is_err());
    }
}
