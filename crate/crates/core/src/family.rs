use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::mask::{GroundSet, SubsetMask};

/// Largest ground set scanned mask-by-mask.
pub const SCAN_LIMIT: usize = 24;

/// A family given by a membership predicate rather than a list of members.
pub trait MembershipOracle: Send + Sync {
    fn ground(&self) -> GroundSet;

    fn contains(&self, set: SubsetMask) -> bool;

    /// All members, in any order. The default scans every mask of the ground set.
    fn enumerate(&self) -> Result<Vec<SubsetMask>> {
        scan_members(self.ground(), |m| self.contains(m))
    }

    fn size_formula(&self) -> Option<BigUint> {
        None
    }

    fn rank_formula(&self) -> Option<usize> {
        None
    }

    /// Short human-readable label, e.g. `aak s=2 t=2`.
    fn describe(&self) -> String;
}

/// Every mask of `ground` accepted by `pred`, in increasing numeric order.
pub fn scan_members<P: Fn(SubsetMask) -> bool>(
    ground: GroundSet,
    pred: P,
) -> Result<Vec<SubsetMask>> {
    let n = ground.size();
    if n > SCAN_LIMIT {
        return Err(Error::ScaleExceeded(format!(
            "mask scan over 2^{n} subsets (limit 2^{SCAN_LIMIT})"
        )));
    }
    Ok((0..1u64 << n)
        .map(SubsetMask::from_bits)
        .filter(|&m| pred(m))
        .collect())
}

#[derive(Clone)]
enum Repr {
    Explicit(Arc<ExplicitMembers>),
    Implicit(Arc<dyn MembershipOracle>),
}

struct ExplicitMembers {
    sorted: Vec<SubsetMask>,
    lookup: HashSet<SubsetMask>,
}

/// A set system over `[n]`. Immutable once built and cheap to clone.
#[derive(Clone)]
pub struct Family {
    ground: GroundSet,
    repr: Repr,
}

impl Family {
    /// Deduplicates and sorts `members` into canonical order.
    pub fn explicit<I: IntoIterator<Item = SubsetMask>>(
        ground: GroundSet,
        members: I,
    ) -> Result<Self> {
        let mut sorted: Vec<SubsetMask> = members.into_iter().collect();
        if let Some(bad) = sorted.iter().find(|m| !ground.contains_mask(**m)) {
            return Err(Error::ElementOutOfRange {
                element: bad.max_element() as u64,
                n: ground.size(),
            });
        }
        sort_canonical(&mut sorted);
        sorted.dedup();
        let lookup = sorted.iter().copied().collect();
        Ok(Self {
            ground,
            repr: Repr::Explicit(Arc::new(ExplicitMembers { sorted, lookup })),
        })
    }

    pub fn implicit(oracle: Arc<dyn MembershipOracle>) -> Self {
        Self {
            ground: oracle.ground(),
            repr: Repr::Implicit(oracle),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.repr, Repr::Explicit(_))
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        match &self.repr {
            Repr::Explicit(e) => e.lookup.contains(&set),
            Repr::Implicit(o) => self.ground.contains_mask(set) && o.contains(set),
        }
    }

    /// Members in canonical order.
    pub fn members(&self) -> Result<Vec<SubsetMask>> {
        match &self.repr {
            Repr::Explicit(e) => Ok(e.sorted.clone()),
            Repr::Implicit(o) => {
                let mut v = o.enumerate()?;
                sort_canonical(&mut v);
                Ok(v)
            }
        }
    }

    /// Number of members, by enumeration.
    pub fn len(&self) -> Result<usize> {
        match &self.repr {
            Repr::Explicit(e) => Ok(e.sorted.len()),
            Repr::Implicit(o) => Ok(o.enumerate()?.len()),
        }
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()? == 0)
    }

    pub fn size_formula(&self) -> Option<BigUint> {
        match &self.repr {
            Repr::Explicit(_) => None,
            Repr::Implicit(o) => o.size_formula(),
        }
    }

    pub fn rank_formula(&self) -> Option<usize> {
        match &self.repr {
            Repr::Explicit(_) => None,
            Repr::Implicit(o) => o.rank_formula(),
        }
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Explicit(e) => format!(
                "explicit n={} members={}",
                self.ground.size(),
                e.sorted.len()
            ),
            Repr::Implicit(o) => o.describe(),
        }
    }

    /// Enumerates an implicit family into an explicit one.
    pub fn materialize(&self) -> Result<Family> {
        match &self.repr {
            Repr::Explicit(_) => Ok(self.clone()),
            Repr::Implicit(_) => Family::explicit(self.ground, self.members()?),
        }
    }

    /// Members plus a fast lookup index, for pair scans.
    pub fn indexed(&self) -> Result<(Vec<SubsetMask>, MemberIndex)> {
        let members = self.members()?;
        let index = MemberIndex::new(self.ground, &members);
        Ok((members, index))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("n", &self.ground.size())
            .field("repr", &self.describe())
            .finish()
    }
}

pub fn sort_canonical(sets: &mut [SubsetMask]) {
    sets.sort_unstable_by_key(|m| m.canonical_key());
}

/// Membership lookup over an enumerated member list: a dense bitmap for
/// small ground sets, a hash set otherwise.
pub enum MemberIndex {
    Dense(Vec<u64>),
    Sparse(HashSet<SubsetMask>),
}

const DENSE_LIMIT: usize = 26;

impl MemberIndex {
    pub fn new(ground: GroundSet, members: &[SubsetMask]) -> Self {
        let n = ground.size();
        if n <= DENSE_LIMIT {
            let words = (1usize << n).div_ceil(64);
            let mut bits = vec![0u64; words];
            for m in members {
                let i = m.bits() as usize;
                bits[i / 64] |= 1 << (i % 64);
            }
            MemberIndex::Dense(bits)
        } else {
            MemberIndex::Sparse(members.iter().copied().collect())
        }
    }

    #[inline]
    pub fn contains(&self, set: SubsetMask) -> bool {
        match self {
            MemberIndex::Dense(bits) => {
                let i = set.bits();
                let word = (i / 64) as usize;
                word < bits.len() && bits[word] & (1 << (i % 64)) != 0
            }
            MemberIndex::Sparse(s) => s.contains(&set),
        }
    }
}
