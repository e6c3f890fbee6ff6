//! Set systems with exchange properties.
//!
//! A family is a collection of subsets of `[n] = {1, ..., n}`, `n ≤ 64`,
//! stored either explicitly or as a membership oracle. The crate provides:
//!
//! * [`constructions`]: the block family `aak`, the rank-tight family `tight`,
//!   the profile-bounded family `thm3` and power sets, with closed-form sizes
//!   and ranks where known;
//! * [`verifiers`]: checkers for six exchange conditions that return a
//!   violating pair when a condition fails;
//! * [`extraction`]: the tree procedure that extracts `1 + s + ... + s^t`
//!   distinct members from a family, or certifies where it gets stuck;
//! * [`search`]: exact minimum sizes and ranks for tiny ground sets, hypergraph
//!   independence numbers and the Katona–Nemetz–Simonovits bound;
//! * [`format`]: the plain-text family file format.

pub mod arith;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod extraction;
pub mod family;
pub mod format;
pub mod mask;
pub mod partition;
pub mod predicates;
pub mod search;
pub mod verifiers;

pub use error::{Error, ParseErrorKind, Result};
pub use family::{Family, MemberIndex, MembershipOracle};
pub use mask::{GroundSet, SubsetMask};
pub use partition::{profile, Partition, ProfileVector};
pub use predicates::{is_atomic, is_downward_closed, rank};
pub use verifiers::{Condition, MatroidReading, Verdict, Witness};
