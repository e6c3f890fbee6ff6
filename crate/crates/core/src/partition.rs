use crate::error::{Error, Result};
use crate::mask::{GroundSet, SubsetMask};

/// A partition of the ground set into disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    parts: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(ground: GroundSet, parts: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = SubsetMask::EMPTY;
        for (i, &p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidPartition(format!("part {} is empty", i + 1)));
            }
            if !ground.contains_mask(p) {
                return Err(Error::InvalidPartition(format!(
                    "part {} leaves the ground set",
                    i + 1
                )));
            }
            if !seen.is_disjoint(p) {
                return Err(Error::InvalidPartition(format!(
                    "part {} overlaps an earlier part",
                    i + 1
                )));
            }
            seen |= p;
        }
        if seen != ground.full() {
            return Err(Error::InvalidPartition(
                "parts do not cover the ground set".into(),
            ));
        }
        Ok(Self { ground, parts })
    }

    /// Consecutive blocks `{1..a}, {a+1..a+b}, ...` with the given sizes.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        let ground = GroundSet::new(n)?;
        let mut next = 1u32;
        let mut parts = Vec::with_capacity(sizes.len());
        for &size in sizes {
            let part = ground.subset(next..next + size as u32)?;
            next += size as u32;
            parts.push(part);
        }
        Self::new(ground, parts)
    }

    /// `t` consecutive blocks of size `s`.
    pub fn equal_blocks(s: usize, t: usize) -> Result<Self> {
        Self::consecutive(&vec![s; t])
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn parts(&self) -> &[SubsetMask] {
        &self.parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    /// `|A ∩ X_j|` for each part `X_j`.
    pub fn intersection_sizes(&self, set: SubsetMask) -> Vec<usize> {
        self.parts.iter().map(|&p| (set & p).len()).collect()
    }

    /// The common part size, if all parts have equal size.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.parts.first()?.len();
        self.parts.iter().all(|p| p.len() == k).then_some(k)
    }
}

/// Per-part intersection counts of a set against an equipartition with part size `k`.
///
/// Both arrays are stored in descending index order, `k` down to `0`:
/// `p[k - i]` is the number of parts meeting the set in exactly `i` elements and
/// `s[k - i]` the number meeting it in at least `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileVector {
    k: usize,
    p: Vec<usize>,
    s: Vec<usize>,
}

impl ProfileVector {
    /// Builds the vector from exact counts given in descending order `p(k), ..., p(0)`.
    pub fn from_exact_counts(p_desc: Vec<usize>) -> Self {
        let k = p_desc.len() - 1;
        let mut s = vec![0; k + 1];
        let mut acc = 0;
        for (idx, &c) in p_desc.iter().enumerate() {
            acc += c;
            s[idx] = acc;
        }
        Self { k, p: p_desc, s }
    }

    pub fn part_size(&self) -> usize {
        self.k
    }

    /// Exact count `p(i)`.
    pub fn p(&self, i: usize) -> usize {
        self.p[self.k - i]
    }

    /// At-least count `s(i)`.
    pub fn s(&self, i: usize) -> usize {
        self.s[self.k - i]
    }

    pub fn exact_desc(&self) -> &[usize] {
        &self.p
    }

    pub fn at_least_desc(&self) -> &[usize] {
        &self.s
    }

    pub fn parts(&self) -> usize {
        self.s(0)
    }

    /// `Σ_{i≥1} s(i)`, which is the size of the profiled set.
    pub fn weight(&self) -> usize {
        (1..=self.k).map(|i| self.s(i)).sum()
    }
}

pub fn profile(set: SubsetMask, partition: &Partition) -> Result<ProfileVector> {
    let k = partition.uniform_size().ok_or(Error::UnequalParts)?;
    let mut p = vec![0; k + 1];
    for c in partition.intersection_sizes(set) {
        p[k - c] += 1;
    }
    Ok(ProfileVector::from_exact_counts(p))
}
