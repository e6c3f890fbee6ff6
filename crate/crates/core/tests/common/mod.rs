#![allow(dead_code)]

use exfam::constructions::{aak_family, powerset_family, thm3_family, tight_rank_family};
use exfam::{Family, GroundSet, SubsetMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Downward closure of `generators`, plus `∅` and every singleton.
pub fn atomic_closure(n: usize, generators: &[SubsetMask]) -> Family {
    let members = (0..1u64 << n)
        .map(SubsetMask::from_bits)
        .filter(|&m| m.len() <= 1 || generators.iter().any(|&g| m.is_subset(g)));
    Family::explicit(GroundSet::new(n).unwrap(), members).unwrap()
}

/// A random downward-closed atomic family on `2..=6` elements, determined by `seed`.
pub fn random_downward_closed(seed: u64) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 5) as usize;
    let count = rng.gen_range(1..=4);
    let generators: Vec<SubsetMask> = (0..count)
        .map(|_| SubsetMask::from_bits(rng.gen_range(0..1u64 << n)))
        .collect();
    atomic_closure(n, &generators)
}

/// A random atomic family on `[n]`, not necessarily downward closed.
pub fn random_atomic(n: usize, seed: u64) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..1u64 << n)
        .map(SubsetMask::from_bits)
        .filter(|m| m.len() <= 1 || rng.gen_bool(0.7));
    Family::explicit(GroundSet::new(n).unwrap(), members).unwrap()
}

/// Every shipped construction on at most `max_n` elements.
pub fn construction_corpus(max_n: usize) -> Vec<(String, Family)> {
    let mut out = Vec::new();
    for s in 1..=max_n {
        for t in 1..=max_n / s {
            out.push((format!("aak({s},{t})"), aak_family(s, t).unwrap()));
        }
    }
    for n in 1..=max_n {
        out.push((format!("tight({n})"), tight_rank_family(n).unwrap()));
    }
    for (n, k) in [(6, 3), (9, 3), (12, 3)] {
        if n <= max_n {
            out.push((format!("thm3({n},{k})"), thm3_family(n, k).unwrap()));
        }
    }
    for n in 0..=max_n.min(6) {
        out.push((format!("powerset({n})"), powerset_family(n).unwrap()));
    }
    out
}

/// All subsets of `[n]` with no size restriction, by direct count.
pub fn sizes_per_part(set: SubsetMask, parts: &[Vec<u32>]) -> Vec<usize> {
    parts
        .iter()
        .map(|p| p.iter().filter(|&&e| set.contains(e)).count())
        .collect()
}

/// Consecutive blocks `1..=a`, `a+1..=a+b`, ... as element lists.
pub fn blocks(sizes: &[usize]) -> Vec<Vec<u32>> {
    let mut next = 1u32;
    sizes
        .iter()
        .map(|&s| {
            let b: Vec<u32> = (next..next + s as u32).collect();
            next += s as u32;
            b
        })
        .collect()
}
