use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set representable by a [`SubsetMask`].
pub const MAX_ELEMENTS: usize = 64;

/// The universe `{1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    /// `n = 0` is accepted so that the power set of the empty ground set can be
    /// represented; everything else in the crate expects `n >= 1`.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(n));
        }
        Ok(Self { n })
    }

    pub fn size(self) -> usize {
        self.n
    }

    pub fn full(self) -> SubsetMask {
        if self.n == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << self.n) - 1)
        }
    }

    pub fn contains_mask(self, set: SubsetMask) -> bool {
        set.is_subset(self.full())
    }

    pub fn singletons(self) -> impl Iterator<Item = SubsetMask> {
        (1..=self.n as u32).map(SubsetMask::singleton)
    }

    /// Builds a subset from 1-based element labels, checking the range.
    pub fn subset<I: IntoIterator<Item = u32>>(self, elements: I) -> Result<SubsetMask> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e as usize > self.n {
                return Err(Error::ElementOutOfRange {
                    element: e as u64,
                    n: self.n,
                });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }
}

/// A subset of the ground set; element `i` lives in bit `i - 1`.
///
/// The derived ordering compares the numeric value of the bit vector. The
/// canonical family order (cardinality first) is [`SubsetMask::canonical_key`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// # Panics
    /// If `element` is outside `1..=64`.
    pub fn singleton(element: u32) -> Self {
        assert!(
            (1..=64).contains(&element),
            "element {element} out of range"
        );
        SubsetMask(1 << (element - 1))
    }

    /// Unchecked convenience constructor used throughout tests.
    pub fn of(elements: &[u32]) -> Self {
        elements.iter().fold(Self::EMPTY, |acc, &e| acc.with(e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    pub fn with(self, element: u32) -> Self {
        self | Self::singleton(element)
    }

    pub fn without(self, element: u32) -> Self {
        SubsetMask(self.0 & !Self::singleton(element).0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Canonical order: ascending cardinality, then ascending numeric value.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }

    /// Largest element present, or 0 for the empty set.
    pub fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }
}

impl std::ops::BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl std::ops::BitOrAssign for SubsetMask {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl fmt::Display for SubsetMask {
    /// `{1,3,4}`; the empty set prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterates over all submasks of `mask` with exactly `k` bits, in increasing numeric order.
pub fn submasks_of_size(mask: SubsetMask, k: usize) -> impl Iterator<Item = SubsetMask> {
    let positions: Vec<u32> = mask.elements().collect();
    let m = positions.len();
    let mut idx: Option<Vec<usize>> = (k <= m).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = cur
            .iter()
            .fold(SubsetMask::EMPTY, |acc, &i| acc.with(positions[i]));
        // advance to the next combination (colex over positions gives numeric order)
        let mut i = 0;
        loop {
            if i == cur.len() {
                idx = None;
                break;
            }
            let limit = if i + 1 < cur.len() { cur[i + 1] } else { m };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    })
}
