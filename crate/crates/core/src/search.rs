//! Exact computations at small scale: minimum family sizes and ranks under each
//! exchange condition, hypergraph independence numbers, and the
//! Katona–Nemetz–Simonovits bound.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{GroundSet, SubsetMask};
use crate::verifiers::{find_violation, Condition, MatroidReading};

/// `max{k : C(k,2) < n}`, or 0 for `n = 0`.
pub fn kmax(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let n = n as u128;
    let pairs = |k: u128| k * k.saturating_sub(1) / 2;
    let mut k = (2 * n).sqrt() + 1;
    while pairs(k) >= n {
        k -= 1;
    }
    while pairs(k + 1) < n {
        k += 1;
    }
    k as u64
}

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
/// Largest ground set for searches over downward-closed families.
pub const DOWNWARD_CLOSED_LIMIT: usize = 5;
/// Largest ground set for searches over arbitrary atomic families.
pub const ATOMIC_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub condition: Condition,
    /// Restrict to downward-closed families (otherwise any atomic family).
    pub downward_closed: bool,
    pub budget: u64,
}

impl SearchOptions {
    pub fn new(condition: Condition) -> Self {
        Self {
            condition,
            downward_closed: true,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn downward_closed(mut self, yes: bool) -> Self {
        self.downward_closed = yes;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub condition: Condition,
    /// Families were required to be atomic (always true here).
    pub atomic: bool,
    pub downward_closed: bool,
    pub minimum: usize,
    pub witness: Family,
    pub nodes_explored: u64,
}

/// Candidate-by-candidate include/exclude search over atomic families on `[n]`,
/// `n ≤ 6`, with the family held as a bitmap indexed by subset value.
struct Searcher {
    n: usize,
    candidates: Vec<SubsetMask>,
    downward_closed: bool,
    condition: Condition,
    budget: u64,
    nodes: u64,
}

impl Searcher {
    fn new(n: usize, max_card: usize, opts: &SearchOptions) -> Self {
        let mut candidates: Vec<SubsetMask> = (0..1u64 << n)
            .map(SubsetMask::from_bits)
            .filter(|m| (2..=max_card).contains(&m.len()))
            .collect();
        candidates.sort_unstable_by_key(|m| m.canonical_key());
        Self {
            n,
            candidates,
            downward_closed: opts.downward_closed,
            condition: opts.condition,
            budget: opts.budget,
            nodes: 0,
        }
    }

    fn base(&self) -> u64 {
        let mut fam = 1u64; // ∅
        for e in 0..self.n {
            fam |= 1 << (1u64 << e);
        }
        fam
    }

    fn passes(&self, fam: u64) -> bool {
        let members: Vec<SubsetMask> = (0..1u64 << self.n)
            .filter(|&v| fam & (1 << v) != 0)
            .map(SubsetMask::from_bits)
            .collect();
        let contains = |m: SubsetMask| fam & (1 << m.bits()) != 0;
        find_violation(
            &members,
            &contains,
            self.condition,
            MatroidReading::default(),
        )
        .is_none()
    }

    fn can_include(&self, fam: u64, set: SubsetMask) -> bool {
        !self.downward_closed
            || set
                .elements()
                .all(|x| fam & (1 << set.without(x).bits()) != 0)
    }

    fn tick(&mut self, lower_bound: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted {
                budget: self.budget,
                explored: self.nodes - 1,
                lower_bound,
            });
        }
        Ok(())
    }

    /// Finds a passing family with exactly `target` members.
    fn exact_size(
        &mut self,
        idx: usize,
        fam: u64,
        count: usize,
        target: usize,
    ) -> Result<Option<u64>> {
        self.tick(target)?;
        if count > target || count + (self.candidates.len() - idx) < target {
            return Ok(None);
        }
        if idx == self.candidates.len() || count == target {
            return Ok((count == target && self.passes(fam)).then_some(fam));
        }
        let set = self.candidates[idx];
        if self.can_include(fam, set) {
            if let Some(found) =
                self.exact_size(idx + 1, fam | (1 << set.bits()), count + 1, target)?
            {
                return Ok(Some(found));
            }
        }
        self.exact_size(idx + 1, fam, count, target)
    }

    /// Finds any passing family.
    fn any(&mut self, idx: usize, fam: u64, lower_bound: usize) -> Result<Option<u64>> {
        self.tick(lower_bound)?;
        if idx == self.candidates.len() {
            return Ok(self.passes(fam).then_some(fam));
        }
        let set = self.candidates[idx];
        if self.can_include(fam, set) {
            if let Some(found) = self.any(idx + 1, fam | (1 << set.bits()), lower_bound)? {
                return Ok(Some(found));
            }
        }
        self.any(idx + 1, fam, lower_bound)
    }

    fn to_family(&self, fam: u64) -> Result<Family> {
        let ground = GroundSet::new(self.n)?;
        Family::explicit(
            ground,
            (0..1u64 << self.n)
                .filter(|&v| fam & (1 << v) != 0)
                .map(SubsetMask::from_bits),
        )
    }
}

fn check_scale(n: usize, downward_closed: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let limit = if downward_closed {
        DOWNWARD_CLOSED_LIMIT
    } else {
        ATOMIC_LIMIT
    };
    if n > limit {
        let space = if downward_closed {
            "downward-closed"
        } else {
            "atomic"
        };
        return Err(Error::ScaleExceeded(format!(
            "n={n} exceeds {limit} for {space} search"
        )));
    }
    Ok(())
}

/// Smallest atomic family on `[n]` satisfying `condition`, found by trying
/// sizes in increasing order, so the first family found is minimal.
pub fn min_family_size(n: usize, opts: &SearchOptions) -> Result<SearchResult> {
    check_scale(n, opts.downward_closed)?;
    let mut searcher = Searcher::new(n, n, opts);
    let base = searcher.base();
    let forced = n + 1;
    for target in forced..=forced + searcher.candidates.len() {
        if let Some(fam) = searcher.exact_size(0, base, forced, target)? {
            return Ok(SearchResult {
                n,
                condition: opts.condition,
                atomic: true,
                downward_closed: opts.downward_closed,
                minimum: target,
                witness: searcher.to_family(fam)?,
                nodes_explored: searcher.nodes,
            });
        }
    }
    // the full power set passes every condition, so this is unreachable for
    // atomic searches; kept as an error rather than a panic
    Err(Error::ScaleExceeded(format!(
        "no {} family found on n={n}",
        opts.condition
    )))
}

#[derive(Debug, Clone)]
pub struct RankSearchResult {
    pub n: usize,
    pub condition: Condition,
    pub min_rank: usize,
    pub witness: Family,
    pub nodes_explored: u64,
}

/// Smallest rank of a downward-closed atomic family on `[n]` satisfying `condition`.
pub fn min_rank(n: usize, condition: Condition, budget: u64) -> Result<RankSearchResult> {
    check_scale(n, true)?;
    let opts = SearchOptions::new(condition).budget(budget);
    let mut nodes = 0;
    for r in 1..=n {
        let mut searcher = Searcher::new(n, r, &opts);
        searcher.budget = budget.saturating_sub(nodes);
        let found = searcher.any(0, searcher.base(), r);
        nodes += searcher.nodes;
        let found = found.map_err(|e| match e {
            Error::BudgetExhausted { lower_bound, .. } => Error::BudgetExhausted {
                budget,
                explored: nodes,
                lower_bound,
            },
            other => other,
        })?;
        if let Some(fam) = found {
            return Ok(RankSearchResult {
                n,
                condition,
                min_rank: r,
                witness: searcher.to_family(fam)?,
                nodes_explored: nodes,
            });
        }
    }
    Err(Error::ScaleExceeded(format!(
        "no {condition} family found on n={n}"
    )))
}

// ---------------------------------------------------------------------------
// hypergraphs

pub const INDEPENDENCE_LIMIT: usize = 24;

/// A `k`-uniform hypergraph on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<SubsetMask>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<SubsetMask>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        for e in &edges {
            if e.len() != k || !ground.contains_mask(*e) {
                return Err(Error::InvalidParams(format!(
                    "edge {e} is not a {k}-subset of [{n}]"
                )));
            }
        }
        Ok(Self { n, k, edges })
    }

    /// Every `k`-subset of `[n]`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let edges = crate::mask::submasks_of_size(ground.full(), k).collect();
        Self::new(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[SubsetMask] {
        &self.edges
    }
}

/// Largest vertex set containing no edge, by include/exclude branching with a
/// cardinality bound.
pub fn independence_number(h: &Hypergraph) -> Result<usize> {
    if h.n > INDEPENDENCE_LIMIT {
        return Err(Error::ScaleExceeded(format!(
            "independence number on n={} (limit {INDEPENDENCE_LIMIT})",
            h.n
        )));
    }
    let mut incident: Vec<Vec<SubsetMask>> = vec![Vec::new(); h.n + 1];
    for &e in &h.edges {
        for v in e.elements() {
            incident[v as usize].push(e);
        }
    }
    let mut best = 0;
    independent_dfs(1, h.n as u32, SubsetMask::EMPTY, &incident, &mut best);
    Ok(best)
}

fn independent_dfs(
    v: u32,
    n: u32,
    chosen: SubsetMask,
    incident: &[Vec<SubsetMask>],
    best: &mut usize,
) {
    if chosen.len() + (n + 1 - v) as usize <= *best {
        return;
    }
    if v > n {
        *best = chosen.len();
        return;
    }
    let with = chosen.with(v);
    if incident[v as usize].iter().all(|e| !e.is_subset(with)) {
        independent_dfs(v + 1, n, with, incident, best);
    }
    independent_dfs(v + 1, n, chosen, incident, best);
}

/// `C(n,k) / C(alpha,k)` in lowest terms.
///
/// A `k`-uniform hypergraph on `n` vertices in which every `alpha`-subset spans
/// an edge (independence number below `alpha`) has at least this many edges.
pub fn kns_bound(n: u64, k: u64, alpha: u64) -> Result<BigRational> {
    if !(k <= alpha && alpha <= n) {
        return Err(Error::InvalidParams(format!(
            "need k <= alpha <= n (got n={n}, k={k}, alpha={alpha})"
        )));
    }
    let num = BigInt::from(binomial(n, k));
    let den = BigInt::from(binomial(alpha, k));
    Ok(BigRational::new(num, den))
}
