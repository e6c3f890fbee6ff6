use crate::error::{Error, Result};
use crate::family::Family;

/// `∅` and every singleton are members.
pub fn is_atomic(family: &Family) -> bool {
    let g = family.ground();
    family.contains(crate::mask::SubsetMask::EMPTY) && g.singletons().all(|s| family.contains(s))
}

/// Closed under taking subsets. Only one-element deletions are checked; the
/// full condition follows by induction on the number of removed elements.
pub fn is_downward_closed(family: &Family) -> Result<bool> {
    let (members, index) = family.indexed()?;
    Ok(members
        .iter()
        .all(|&a| a.elements().all(|x| index.contains(a.without(x)))))
}

/// Size of the largest member.
pub fn rank(family: &Family) -> Result<usize> {
    family
        .members()?
        .iter()
        .map(|m| m.len())
        .max()
        .ok_or(Error::EmptyFamily)
}
