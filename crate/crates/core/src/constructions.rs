//! The shipped families: the block construction `aak`, the rank-tight
//! staircase family `tight`, the profile-bounded family `thm3`, and power sets.
//!
//! All of them are defined on consecutive blocks and their membership depends
//! only on the vector of per-part intersection sizes, which lets a single
//! enumerator serve all three.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::family::{scan_members, Family, MembershipOracle, SCAN_LIMIT};
use crate::mask::{submasks_of_size, GroundSet, SubsetMask};
use crate::partition::{Partition, ProfileVector};
use crate::search::kmax;

/// A membership rule on the per-part intersection sizes `|A ∩ X_j|`.
pub trait PartRule: Send + Sync {
    fn accepts(&self, sizes: &[usize]) -> bool;

    /// Whether some completion of the given prefix of sizes can be accepted.
    /// Must hold for every prefix of an accepted vector.
    fn prefix_ok(&self, prefix: &[usize]) -> bool;
}

/// A family on a partition whose membership is decided by a [`PartRule`].
pub struct PartwiseFamily<R> {
    partition: Partition,
    rule: R,
    label: String,
    size: Option<BigUint>,
    rank: Option<usize>,
}

impl<R: PartRule> PartwiseFamily<R> {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn rule(&self) -> &R {
        &self.rule
    }

    pub fn enumerate_scan(&self) -> Result<Vec<SubsetMask>> {
        scan_members(self.partition.ground(), |m| self.contains(m))
    }

    /// Enumerates by choosing an intersection size per part, then every
    /// combination of elements realising those sizes.
    pub fn enumerate_structured(&self) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        self.for_each_size_vector(|sizes| {
            let choices: Vec<Vec<SubsetMask>> = self
                .partition
                .parts()
                .iter()
                .zip(sizes)
                .map(|(&part, &c)| submasks_of_size(part, c).collect())
                .collect();
            expand(&choices, 0, SubsetMask::EMPTY, &mut out);
        });
        out
    }

    /// Exact member count without materialising the members.
    pub fn count_structured(&self) -> BigUint {
        let part_sizes = self.partition.part_sizes();
        let mut total = BigUint::zero();
        self.for_each_size_vector(|sizes| {
            let mut term = BigUint::one();
            for (&len, &c) in part_sizes.iter().zip(sizes) {
                term *= binomial(len as u64, c as u64);
            }
            total += term;
        });
        total
    }

    fn for_each_size_vector<F: FnMut(&[usize])>(&self, mut visit: F) {
        let part_sizes = self.partition.part_sizes();
        let mut sizes = Vec::with_capacity(part_sizes.len());
        self.size_dfs(&part_sizes, &mut sizes, &mut visit);
    }

    fn size_dfs<F: FnMut(&[usize])>(
        &self,
        part_sizes: &[usize],
        sizes: &mut Vec<usize>,
        visit: &mut F,
    ) {
        let j = sizes.len();
        if j == part_sizes.len() {
            if self.rule.accepts(sizes) {
                visit(sizes);
            }
            return;
        }
        for c in 0..=part_sizes[j] {
            sizes.push(c);
            if self.rule.prefix_ok(sizes) {
                self.size_dfs(part_sizes, sizes, visit);
            }
            sizes.pop();
        }
    }
}

fn expand(choices: &[Vec<SubsetMask>], j: usize, acc: SubsetMask, out: &mut Vec<SubsetMask>) {
    if j == choices.len() {
        out.push(acc);
        return;
    }
    for &c in &choices[j] {
        expand(choices, j + 1, acc | c, out);
    }
}

impl<R: PartRule> MembershipOracle for PartwiseFamily<R> {
    fn ground(&self) -> GroundSet {
        self.partition.ground()
    }

    fn contains(&self, set: SubsetMask) -> bool {
        self.rule.accepts(&self.partition.intersection_sizes(set))
    }

    fn enumerate(&self) -> Result<Vec<SubsetMask>> {
        if self.partition.ground().size() <= SCAN_LIMIT {
            self.enumerate_scan()
        } else {
            Ok(self.enumerate_structured())
        }
    }

    fn size_formula(&self) -> Option<BigUint> {
        self.size.clone()
    }

    fn rank_formula(&self) -> Option<usize> {
        self.rank
    }

    fn describe(&self) -> String {
        self.label.clone()
    }
}

// ---------------------------------------------------------------------------
// block construction

/// At most one part may meet the set in two or more elements.
#[derive(Debug, Clone, Copy)]
pub struct AakRule;

impl PartRule for AakRule {
    fn accepts(&self, sizes: &[usize]) -> bool {
        sizes.iter().filter(|&&c| c >= 2).count() <= 1
    }

    fn prefix_ok(&self, prefix: &[usize]) -> bool {
        self.accepts(prefix)
    }
}

/// Parameters of the block construction: `t` blocks of size `s`, `n = s·t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AakParams {
    pub s: usize,
    pub t: usize,
}

impl AakParams {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::InvalidParams("s and t must be at least 1".into()));
        }
        if s * t > crate::mask::MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(s * t));
        }
        Ok(Self { s, t })
    }

    pub fn n(self) -> usize {
        self.s * self.t
    }
}

pub fn aak_oracle(s: usize, t: usize) -> Result<PartwiseFamily<AakRule>> {
    let params = AakParams::new(s, t)?;
    Ok(PartwiseFamily {
        partition: Partition::equal_blocks(s, t)?,
        rule: AakRule,
        label: format!("aak s={s} t={t}"),
        size: Some(aak_size(params.s, params.t)),
        rank: Some(s + t - 1),
    })
}

/// Sets meeting every block but one in at most one element, over `t`
/// consecutive blocks of size `s`.
pub fn aak_family(s: usize, t: usize) -> Result<Family> {
    Ok(Family::implicit(Arc::new(aak_oracle(s, t)?)))
}

/// `(t·2^s − (s+1)(t−1))·(s+1)^(t−1)`.
pub fn aak_size(s: usize, t: usize) -> BigUint {
    let s_big = BigUint::from(s);
    let t_big = BigUint::from(t);
    let head = &t_big * (BigUint::one() << s) - (&s_big + 1u32) * (&t_big - 1u32);
    head * (s_big + 1u32).pow(t as u32 - 1)
}

/// The `(s, t)` minimising `aak_size(s, ⌈n/s⌉)` over `1 ≤ s ≤ n`, smaller `s`
/// winning ties. When `s·t > n` the family lives on the padded ground set of
/// `s·t` elements.
pub fn choose_aak_params(n: usize) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let mut best: Option<(BigUint, usize, usize)> = None;
    for s in 1..=n {
        let t = n.div_ceil(s);
        let size = aak_size(s, t);
        if best.as_ref().is_none_or(|(b, _, _)| size < *b) {
            best = Some((size, s, t));
        }
    }
    let (_, s, t) = best.expect("n >= 1");
    Ok((s, t))
}

// ---------------------------------------------------------------------------
// rank-tight staircase

/// Union over `i` of the sets missing every part before `i` and meeting every
/// part after `i` in at most one element.
#[derive(Debug, Clone, Copy)]
pub struct StaircaseRule;

impl PartRule for StaircaseRule {
    fn accepts(&self, sizes: &[usize]) -> bool {
        (0..sizes.len())
            .any(|i| sizes[..i].iter().all(|&c| c == 0) && sizes[i + 1..].iter().all(|&c| c <= 1))
    }

    fn prefix_ok(&self, prefix: &[usize]) -> bool {
        // the free part may also lie beyond the prefix (i == len)
        (0..=prefix.len()).any(|i| {
            prefix[..i].iter().all(|&c| c == 0)
                && prefix
                    .get(i + 1..)
                    .is_none_or(|rest| rest.iter().all(|&c| c <= 1))
        })
    }
}

/// Part sizes `1, 2, ..., k−1, n − C(k,2)` with `k = kmax(n)`.
pub fn tight_part_sizes(n: usize) -> Vec<usize> {
    let k = kmax(n as u64) as usize;
    let mut sizes: Vec<usize> = (1..k).collect();
    sizes.push(n - k * (k - 1) / 2);
    sizes
}

pub fn tight_rank_oracle(n: usize) -> Result<PartwiseFamily<StaircaseRule>> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    GroundSet::new(n)?;
    let sizes = tight_part_sizes(n);
    Ok(PartwiseFamily {
        partition: Partition::consecutive(&sizes)?,
        rule: StaircaseRule,
        label: format!("tight n={n}"),
        size: None,
        rank: Some(sizes.len()),
    })
}

/// An atomic family with the weak exchange property and the smallest possible rank.
pub fn tight_rank_family(n: usize) -> Result<Family> {
    Ok(Family::implicit(Arc::new(tight_rank_oracle(n)?)))
}

// ---------------------------------------------------------------------------
// profile-bounded family

/// Parameters of the profile-bounded family: `n/k` blocks of size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thm3Params {
    pub n: usize,
    pub k: usize,
}

impl Thm3Params {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 || k < 3 {
            return Err(Error::InvalidParams(format!(
                "need n >= 3 and k >= 3 (got n={n}, k={k})"
            )));
        }
        if !n.is_multiple_of(k) {
            return Err(Error::InvalidParams(format!("k={k} does not divide n={n}")));
        }
        // 2^(k-2) <= n/k
        if k - 2 >= usize::BITS as usize - 1 || (1usize << (k - 2)) > n / k {
            return Err(Error::InvalidParams(format!(
                "2^(k-2) > n/k for n={n}, k={k}"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn parts(self) -> usize {
        self.n / self.k
    }

    /// Upper bound on `s(i)` for `1 ≤ i ≤ k`.
    pub fn cap(self, i: usize) -> usize {
        let t = self.parts();
        match i {
            0 | 1 => t,
            i if i == self.k => 1.min(t),
            i => {
                let e = self.k - 1 - i;
                if e >= usize::BITS as usize - 1 {
                    t
                } else {
                    (1usize << e).min(t)
                }
            }
        }
    }
}

/// Largest `k ≥ 3` with `2^(k−2) ≤ n/k`, if any.
pub fn thm3_part_size_for(n: usize) -> Option<usize> {
    let mut best = None;
    let mut k = 3usize;
    while k < 62 && (1u128 << (k - 2)) * k as u128 <= n as u128 {
        best = Some(k);
        k += 1;
    }
    best
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileRule {
    params: Thm3Params,
}

impl PartRule for ProfileRule {
    fn accepts(&self, sizes: &[usize]) -> bool {
        let k = self.params.k;
        (2..=k).all(|i| sizes.iter().filter(|&&c| c >= i).count() <= self.params.cap(i))
    }

    fn prefix_ok(&self, prefix: &[usize]) -> bool {
        self.accepts(prefix)
    }
}

pub fn thm3_oracle(n: usize, k: usize) -> Result<PartwiseFamily<ProfileRule>> {
    let params = Thm3Params::new(n, k)?;
    GroundSet::new(n)?;
    Ok(PartwiseFamily {
        partition: Partition::equal_blocks(k, n / k)?,
        rule: ProfileRule { params },
        label: format!("thm3 n={n} k={k}"),
        size: None,
        rank: Some(thm3_rank(n, k)?),
    })
}

/// Sets with `s(k) ≤ 1` and `s(i) ≤ 2^(k−1−i)` for `2 ≤ i ≤ k−1`, profiled
/// against `n/k` consecutive blocks of size `k`.
pub fn thm3_family(n: usize, k: usize) -> Result<Family> {
    Ok(Family::implicit(Arc::new(thm3_oracle(n, k)?)))
}

/// `n/k + 2^(k−2)`.
pub fn thm3_rank(n: usize, k: usize) -> Result<usize> {
    let p = Thm3Params::new(n, k)?;
    Ok(p.parts() + (1 << (k - 2)))
}

/// Profile of a largest member: `s = (1, 1, 2, 4, ..., 2^(k−3), n/k, n/k)`.
pub fn thm3_max_profile(n: usize, k: usize) -> Result<ProfileVector> {
    let p = Thm3Params::new(n, k)?;
    let t = p.parts();
    let s_desc: Vec<usize> = (0..=k).rev().map(|i| p.cap(i)).collect();
    let mut p_desc = Vec::with_capacity(k + 1);
    for idx in 0..=k {
        let above = if idx == 0 { 0 } else { s_desc[idx - 1] };
        p_desc.push(s_desc[idx] - above);
    }
    debug_assert_eq!(s_desc[k], t);
    Ok(ProfileVector::from_exact_counts(p_desc))
}

/// Exact size of the profile-bounded family, counted level by level over the
/// at-least vector `s(k), ..., s(1)` rather than by enumeration. Works for any
/// valid `(n, k)`, not only those fitting a 64-element mask.
pub fn thm3_size(n: usize, k: usize) -> Result<BigUint> {
    let p = Thm3Params::new(n, k)?;
    let t = p.parts();
    // ways[c] = number of ways to fill the parts meeting the set in > i elements, with s(i+1) = c
    let mut ways: Vec<BigUint> = vec![BigUint::zero(); t + 1];
    ways[0] = BigUint::one();
    for i in (1..=k).rev() {
        let cap = p.cap(i);
        let per_part = binomial(k as u64, i as u64);
        let mut next = vec![BigUint::zero(); t + 1];
        for (prev, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for cur in prev..=cap {
                let fresh = (cur - prev) as u64;
                next[cur] += w * binomial((t - prev) as u64, fresh) * per_part.pow(fresh as u32);
            }
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

// ---------------------------------------------------------------------------
// power set

pub struct PowerSet {
    ground: GroundSet,
}

impl MembershipOracle for PowerSet {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn contains(&self, set: SubsetMask) -> bool {
        self.ground.contains_mask(set)
    }

    fn size_formula(&self) -> Option<BigUint> {
        Some(BigUint::one() << self.ground.size())
    }

    fn rank_formula(&self) -> Option<usize> {
        Some(self.ground.size())
    }

    fn describe(&self) -> String {
        format!("powerset n={}", self.ground.size())
    }
}

pub fn powerset_family(n: usize) -> Result<Family> {
    Ok(Family::implicit(Arc::new(PowerSet {
        ground: GroundSet::new(n)?,
    })))
}
