//! Extraction of `1 + s + ... + s^t` distinct members from an atomic family.
//!
//! Every non-leaf vertex `v` gets a level set `X(v)` of `s` elements, disjoint
//! from the level sets of its ancestors, such that `F(v) + x` is a member for
//! each `x ∈ X(v)`. The children of `v` are `F(v) + x`. When no such level set
//! exists the run stops with the set `Y` of blocked elements, which certifies
//! that the family is too small for the requested shape or lacks the
//! size-ordered exchange property.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::SubsetMask;
use crate::predicates::is_atomic;

/// Largest tree that [`extract_tree`] will build.
pub const MAX_VERTICES: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub level: usize,
    /// Edge labels along the root-to-vertex path.
    pub path: Vec<u32>,
    pub member: SubsetMask,
    /// `None` for leaves.
    pub level_set: Option<SubsetMask>,
}

/// The vertices of the extraction tree in depth-first order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTree {
    pub s: usize,
    pub t: usize,
    pub vertices: Vec<TreeVertex>,
}

impl ExtractionTree {
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.vertices.iter().map(|v| v.member)
    }

    /// Dump format: one line per vertex, `level path-labels F(v) X(v)`, with
    /// sets as comma-separated elements and `-` for empty fields.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let path = if v.path.is_empty() {
                "-".to_string()
            } else {
                v.path
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let level_set = v.level_set.map_or("-".to_string(), dump_set);
            out.push_str(&format!(
                "{} {} {} {}\n",
                v.level,
                path,
                dump_set(v.member),
                level_set
            ));
        }
        out
    }
}

fn dump_set(set: SubsetMask) -> String {
    if set.is_empty() {
        "-".to_string()
    } else {
        set.elements()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Why a level set could not be chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSetFailure {
    /// Elements outside the ancestors' level sets that cannot extend `F(v)`.
    pub blocked: SubsetMask,
    /// Elements that can.
    pub available: SubsetMask,
    pub needed: usize,
}

/// A vertex where extraction stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionFailure {
    pub level: usize,
    pub path: Vec<u32>,
    pub member: SubsetMask,
    pub blocked: SubsetMask,
    pub available: SubsetMask,
    pub needed: usize,
}

impl fmt::Display for ExtractionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(u32::to_string).collect();
        write!(
            f,
            "FAILURE level={} path={} F(v)={} blocked={} available={} needed={}",
            self.level,
            if path.is_empty() {
                "-".to_string()
            } else {
                path.join(",")
            },
            self.member,
            self.blocked,
            self.available.len(),
            self.needed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extraction {
    Tree(ExtractionTree),
    Failed(ExtractionFailure),
}

/// Picks the lexicographically smallest `s`-set `X ⊆ [n] ∖ Z` with
/// `F(v) + x ∈ F` for every `x ∈ X`.
pub fn pick_level_set(
    family: &Family,
    member: SubsetMask,
    used: SubsetMask,
    s: usize,
) -> std::result::Result<SubsetMask, LevelSetFailure> {
    let free = family.ground().full().difference(used);
    let mut blocked = SubsetMask::EMPTY;
    let mut available = SubsetMask::EMPTY;
    for y in free.elements() {
        if family.contains(member.with(y)) {
            available = available.with(y);
        } else {
            blocked = blocked.with(y);
        }
    }
    if available.len() < s {
        return Err(LevelSetFailure {
            blocked,
            available,
            needed: s,
        });
    }
    Ok(available
        .elements()
        .take(s)
        .fold(SubsetMask::EMPTY, |acc, e| acc.with(e)))
}

/// Builds the `s`-ary tree of depth `t`, or reports the first vertex (in
/// depth-first order) where no level set exists.
pub fn extract_tree(family: &Family, s: usize, t: usize) -> Result<Extraction> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParams(
            "branching and depth must be at least 1".into(),
        ));
    }
    let vertices: u128 = (0..=t as u32).map(|i| (s as u128).saturating_pow(i)).sum();
    if vertices > MAX_VERTICES {
        return Err(Error::ScaleExceeded(format!(
            "tree with {vertices} vertices (limit {MAX_VERTICES})"
        )));
    }
    if !is_atomic(family) {
        return Err(Error::NotAtomic);
    }
    let mut tree = ExtractionTree {
        s,
        t,
        vertices: Vec::with_capacity(vertices as usize),
    };
    let mut path = Vec::with_capacity(t);
    match grow(
        family,
        s,
        t,
        SubsetMask::EMPTY,
        SubsetMask::EMPTY,
        &mut path,
        &mut tree.vertices,
    ) {
        Ok(()) => Ok(Extraction::Tree(tree)),
        Err(f) => Ok(Extraction::Failed(f)),
    }
}

fn grow(
    family: &Family,
    s: usize,
    t: usize,
    member: SubsetMask,
    used: SubsetMask,
    path: &mut Vec<u32>,
    out: &mut Vec<TreeVertex>,
) -> std::result::Result<(), ExtractionFailure> {
    let level = path.len();
    if level == t {
        out.push(TreeVertex {
            level,
            path: path.clone(),
            member,
            level_set: None,
        });
        return Ok(());
    }
    let level_set = pick_level_set(family, member, used, s).map_err(|e| ExtractionFailure {
        level,
        path: path.clone(),
        member,
        blocked: e.blocked,
        available: e.available,
        needed: e.needed,
    })?;
    out.push(TreeVertex {
        level,
        path: path.clone(),
        member,
        level_set: Some(level_set),
    });
    for x in level_set.elements() {
        path.push(x);
        grow(family, s, t, member.with(x), used | level_set, path, out)?;
        path.pop();
    }
    Ok(())
}

/// The asymptotic parameter choice `s = ⌊√n / log²n⌋`, `t = ⌊(1 − 1/log n)·√(2n)⌋`
/// (base-2 logarithms), clamped to at least 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefaultParams {
    pub s: usize,
    pub t: usize,
    pub raw_s: usize,
    pub raw_t: usize,
    /// `n ≥ t²/2 + t·s`, the condition under which every level set is guaranteed.
    pub feasible: bool,
}

impl DefaultParams {
    pub fn clamped(&self) -> bool {
        self.s != self.raw_s || self.t != self.raw_t
    }
}

pub fn thm2_default_params(n: usize) -> Result<DefaultParams> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let nf = n as f64;
    let log = nf.log2();
    let raw_s = (nf.sqrt() / (log * log)).floor() as usize;
    let raw_t = ((1.0 - 1.0 / log) * (2.0 * nf).sqrt()).floor() as usize;
    let s = raw_s.max(1);
    let t = raw_t.max(1);
    let feasible = 2 * n >= t * t + 2 * t * s;
    Ok(DefaultParams {
        s,
        t,
        raw_s,
        raw_t,
        feasible,
    })
}

/// Checks the tree's structural invariants against the family.
pub fn validate_tree(family: &Family, tree: &ExtractionTree) -> std::result::Result<(), String> {
    let expected: usize = (0..=tree.t as u32).map(|i| tree.s.pow(i)).sum();
    if tree.vertices.len() != expected {
        return Err(format!(
            "{} vertices, expected {expected}",
            tree.vertices.len()
        ));
    }
    let mut seen = std::collections::HashSet::new();
    // ancestors' level sets along the current DFS path
    let mut stack: Vec<SubsetMask> = Vec::new();
    for v in &tree.vertices {
        stack.truncate(v.level);
        if v.member.len() != v.level || v.path.len() != v.level {
            return Err(format!("vertex {} has the wrong size", v.member));
        }
        if SubsetMask::of(&v.path) != v.member {
            return Err(format!(
                "vertex {} does not match its path labels",
                v.member
            ));
        }
        if let Some(&last) = v.path.last() {
            if !stack.last().is_some_and(|x| x.contains(last)) {
                return Err(format!("edge label {last} not in the parent's level set"));
            }
        }
        if !family.contains(v.member) {
            return Err(format!("{} is not a member", v.member));
        }
        if !seen.insert(v.member) {
            return Err(format!("{} appears twice", v.member));
        }
        match (v.level < tree.t, v.level_set) {
            (true, Some(x)) => {
                let used = stack.iter().fold(SubsetMask::EMPTY, |acc, &m| acc | m);
                if x.len() != tree.s || !x.is_disjoint(used) {
                    return Err(format!("bad level set {x} at {}", v.member));
                }
                stack.push(x);
            }
            (false, None) => {}
            _ => return Err(format!("level set presence wrong at {}", v.member)),
        }
    }
    Ok(())
}
